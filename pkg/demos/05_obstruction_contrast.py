"""Why the frame-bundle quantization survives where the classical one cannot.

On the cotangent bundle, the two classically equal bracket expressions
for q^2 p^2 quantize inconsistently under Weyl ordering: their normalized
commutators differ by a nonzero multiple of hbar^2.  On the frame bundle
the same cubic expressions land in the killed rank ideal, so both sides
of the bracket-to-commutator condition vanish identically and no
obstruction arises.
"""

from nsq import bracket, dirac_check, make_pihat, make_q1, make_qhat, quantize
from nsq.algebra import sym_mul, sym_pow
from nsq.symplectic_ref import (
    classical_bracket,
    groenewold_witness,
    sp_p,
    sp_q,
    weyl_quantize,
)

# Downstairs: the classical inconsistency.
q, p = sp_q(1), sp_p(1)
print("{q^3, p^3}   =", classical_bracket(q**3, p**3, 1))
print("{q^2p, qp^2} =", classical_bracket(q**2 * p, q * p**2, 1))
print("  -> both normalize to q^2 p^2")

w = groenewold_witness()
print("\nordering witness (difference of normalized commutators):", w)
print("nonzero:", not w.is_zero(), "| hbar-degree:", w.ihbar_degree())
print("matches the brute-force word-average oracle:",
      w == groenewold_witness(brute=True))

# Upstairs: the same expressions, now tensor-valued, sit in the killed ideal.
n = 2
qh, ph = make_qhat(n, 1, 1), make_pihat(n, 1)
q1map = make_q1(n)
pairs = [
    (sym_pow(qh, 3), sym_pow(ph, 3)),
    (sym_mul(sym_pow(qh, 2), ph), sym_mul(qh, sym_pow(ph, 2))),
]
print("\nframe-bundle contrast:")
for f, g in pairs:
    br = bracket(f, g)
    print(f"  bracket {f!r} with {g!r} -> rank {br.rank()} (killed)")
    print(
        "    images are zero:",
        quantize(q1map, f).is_zero() and quantize(q1map, g).is_zero(),
        "| bracket image is zero:",
        quantize(q1map, br).is_zero(),
        "| condition holds:",
        dirac_check(q1map, f, g),
    )
