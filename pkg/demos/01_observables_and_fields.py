"""Observables on the frame bundle and their Hamiltonian vector fields.

The frame bundle of R^n carries coordinates (q^i, pi^a_b) with pi an
invertible matrix.  Observables are symmetric-tensor-valued polynomials
generated by three families of rank-1 elements; each determines a graded
vector field through the structure equation.  This script builds a few,
prints their component maps and fields, and verifies the structure
equation that ties them together.
"""

from nsq import (
    FramePoint,
    evaluate,
    ham_vf,
    make_pihat,
    make_qhat,
    make_rhat,
    structure_eq_check,
    sym_mul,
)

n = 2

# The three generator families.
q11 = make_qhat(n, 1, 1)   # q^1 placed in tensor slot 1
pi2 = make_pihat(n, 2)     # the momentum column pi^l_2
r1 = make_rhat(n, 1)       # the constant basis observable

print("generators:")
for obs in (q11, pi2, r1):
    comps = {idx: str(obs.component(idx)) for idx in [(1,), (2,)]}
    print(f"  {obs!r:10s} components {comps}")

# Their Hamiltonian fields: position generators point down the fibre,
# momentum generators along the base, constants have no flow at all.
print("\nfields:")
for obs in (q11, pi2, r1):
    print(f"  X[{obs!r}] = {ham_vf(obs)!r}")

# The symmetric product mixes components with normalized weights.
f = sym_mul(q11, pi2)
print(f"\nproduct {f!r}:")
for idx in [(1, 1), (1, 2), (2, 2)]:
    print(f"  component {idx}: {f.component(idx)}")

# Rank-2 observables get rank-1 tensor-valued fields.
x = ham_vf(f)
print(f"\nits field: {x!r}")
print("structure equation holds:", structure_eq_check(f, x))

# Exact evaluation at a rational frame point.
u = FramePoint((1, 0), [[1, 0], [0, 1]])
values = {idx: str(v) for idx, v in evaluate(f, u).items()}
print(f"\nvalues at q=(1,0), pi=identity: {values}")
