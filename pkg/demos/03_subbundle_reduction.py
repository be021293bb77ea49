"""Restriction to the 2n-dimensional subbundle slice.

Freezing all coframe rows but the first to identity rows cuts out a
slice with coordinates (Q^i, P_j) on which the two-form collapses to
dP_j ^ dQ^j.  The basic polynomial algebra descends to the slice, the
descent is a bracket homomorphism, and the canonical representatives of
its Hamiltonian classes are tangent to the slice.
"""

from fractions import Fraction

from nsq import (
    SubbundlePoint,
    bracket,
    frame_from_params,
    gauge_fix_for_B1,
    make_pihat,
    make_qhat,
    pullback_two_form,
    reduce_observable,
    reduced_bracket,
    slice_check,
    sym_mul,
    tangency_check,
)
from nsq.subbundle import G1Element, g1_embed, right_action, two_form_rank

n = 2

# Points of the slice come from a frame scale alpha and shears mu.
p = SubbundlePoint(q=(1, 2), alpha=Fraction(2), mu=(Fraction(3),))
u = frame_from_params(p)
print("frame point:", u)
print("on the slice:", slice_check(u))

# The structure group acts by frame changes that keep the slice.
g = G1Element(Fraction(5), (Fraction(7),))
print("still on the slice after the group action:",
      slice_check(right_action(u, g1_embed(g, n))))

# The pulled-back two-form lives in the surviving slot and is nondegenerate.
pulled = pullback_two_form(n)
print("\npullback, slot 1:", pulled[1])
print("pullback, slot 2:", pulled[2])
print("rank on the slice:", two_form_rank(pulled[1], n), "= 2n")

# Observables of the basic algebra restrict to slice observables.
q11, pi2 = make_qhat(n, 1, 1), make_pihat(n, 2)
f = sym_mul(q11, pi2)
print("\nreduction of", repr(f), "->", repr(reduce_observable(f)))

# Reduction is a bracket homomorphism: both routes agree.
g_obs = make_pihat(n, 1)
upstairs = reduce_observable(bracket(f, g_obs))
downstairs = reduced_bracket(reduce_observable(f), reduce_observable(g_obs))
print("reduce of bracket:", repr(upstairs))
print("bracket of reductions:", repr(downstairs))
print("homomorphism:", upstairs == downstairs)

# Canonical representatives are tangent to the slice.
x = gauge_fix_for_B1(sym_mul(sym_mul(q11, q11), pi2))
print("\ntangent representative:", tangency_check(x))
