"""The graded Poisson bracket and its algebraic laws.

Rank-p and rank-q observables bracket into rank p+q-1; the familiar
cotangent-bundle relations reappear decorated with trailing constant
factors that carry the extra rank.  The bracket is antisymmetric,
satisfies Jacobi, and does not depend on which representative vector
field computes it.
"""

from nsq import bracket, jacobi_residual, make_pihat, make_qhat, sym_mul, sym_pow
from nsq.poisson import theorem1_check, theorem1_constant

n = 2
q11, q21 = make_qhat(n, 1, 1), make_qhat(n, 2, 1)
pi1, pi2 = make_pihat(n, 1), make_pihat(n, 2)

print("Heisenberg core:")
print("  {qh(1,1), pih(1)} =", bracket(q11, pi1))
print("  {qh(1,1), pih(2)} =", bracket(q11, pi2))
print("  {qh(2,1), pih(2)} =", bracket(q21, pi2))

print("\npowers mirror the cotangent-bundle golden values:")
print("  {qh^2, pih^2} =", bracket(sym_pow(q11, 2), sym_pow(pi1, 2)))
print("  {qh^3, pih^3} =", bracket(sym_pow(q11, 3), sym_pow(pi1, 3)))
print(
    "  {qh^2 pih, qh pih^2} =",
    bracket(sym_mul(sym_pow(q11, 2), pi1), sym_mul(q11, sym_pow(pi1, 2))),
)

print("\nantisymmetry and Jacobi, exactly:")
f, g, h = sym_mul(q11, pi1), sym_mul(pi1, pi2), make_qhat(n, 2, 2)
print("  {f,g} + {g,f} =", bracket(f, g) + bracket(g, f))
print("  jacobi(f,g,h) =", jacobi_residual(f, g, h))

print("\nfield brackets scale by (p+q-1)!/(p!q!):")
for fp, gq in [(q11, pi1), (sym_pow(q11, 2), sym_pow(pi1, 2))]:
    p, q = fp.rank(), gq.rank()
    print(
        f"  ranks ({p},{q}): C = {theorem1_constant(p, q)},",
        "holds:" , theorem1_check(fp, gq),
    )

print("\nrepresentative independence: gauge-shifted fields, same bracket:")
plain = bracket(sym_pow(q11, 2), sym_pow(pi1, 2))
gauged = bracket(sym_pow(q11, 2), sym_pow(pi1, 2), gauge_seed=2024)
print("  equal:", plain == gauged)
