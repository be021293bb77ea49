"""Two full polynomial quantizations of the basic algebra.

Because minimum-rank-k elements form bracket ideals, a quantization can
kill them wholesale and represent only the surviving quotient.  The first
map keeps the Heisenberg core and kills rank >= 2; the second keeps the
quadratic layer with free real symbols A^i and multiplication variables
P_k, killing rank >= 3.  Both satisfy the bracket-to-commutator condition
exactly on the whole polynomial algebra.
"""

from nsq import (
    axiom_report,
    commutator,
    dirac_check,
    formal_adjoint,
    make_pihat,
    make_q1,
    make_q2,
    make_qhat,
    make_rhat,
    quantize,
    sym_mul,
)

n = 2
q1map, q2map = make_q1(n), make_q2(n)
q11, pi1, pi2, r1 = make_qhat(n, 1, 1), make_pihat(n, 1), make_pihat(n, 2), make_rhat(n, 1)

print("rank-killing map:")
for obs in (q11, pi2, r1, sym_mul(q11, pi2)):
    print(f"  Q1({obs!r}) = {quantize(q1map, obs)!r}")

print("\nsymbol-carrying quadratic map:")
for obs in (sym_mul(q11, q11), sym_mul(q11, pi2), sym_mul(pi1, pi2), sym_mul(pi2, r1)):
    print(f"  Q2({obs!r}) = {quantize(q2map, obs)!r}")

# The bracket-to-commutator condition, exactly.
print("\nbracket to commutator:")
print("  [Q(qh), Q(pih)] =", commutator(quantize(q1map, q11), quantize(q1map, pi1)))
print("  dirac holds for (qh, pih):", dirac_check(q1map, q11, pi1))
print("  dirac holds for (qh*pih, pih):", dirac_check(q2map, sym_mul(q11, pi1), pi2))

# Generator images are formally symmetric with respect to the flat density.
op = quantize(q1map, pi1)
print("\nformal symmetry of the momentum image:", formal_adjoint(op) == op)

# The full machine-checkable axiom sweep.
report = axiom_report(q1map, n, degree_cap=3)
print("\naxiom sweep for the rank-killing map:")
print(report.summary())
