"""The graded Poisson bracket on frame-bundle observables.

For homogeneous f of rank p and g of rank q the bracket is

    {f, g}^K = -p! * Sym_K [ X_f^{I_{p-1}} (g^{J_q}) ]

over all canonical multi-indices K of rank p+q-1, where X_f is any
representative of the Hamiltonian class of f (the value does not depend on
the choice) and X(g) is the directional derivative of each component.  The
sign convention is fixed so that {qhat(i,j), pihat(k)} = delta(i,k) rhat(j),
mirroring the cotangent-bundle convention {q, p} = +1.

Every bracket is computed twice, by independent routes:

1. the defining formula above, from the canonical representative, and
2. a generator-level expansion: the bracket is a biderivation of the
   symmetric product with {qhat(i,j), pihat(k)} = delta(i,k) rhat(j) the
   only nonzero generator pair.

The two expansions are compared exactly on every call; the second route
also supplies the generator decomposition of the result, so brackets nest.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from .algebra import (
    GenMonomial,
    Observable,
    all_multi_indices,
    monomial_str,
    rtag,
)
from .errors import EngineError, NotInGeneratorAlgebra
from .forms import HamVF, add_gauge, ham_vf, random_valid_gauge, structure_eq_check, vf_bracket
from .polynomials import Poly
from .scalars import Scalar


def _binom(n: int, k: int) -> int:
    out = 1
    for t in range(k):
        out = out * (n - t) // (t + 1)
    return out


def _bracket_components(
    x: HamVF, p: int, g: Observable, q: int
) -> dict:
    """Route 1: -p! Sym[X(g)] on each rank-(p+q-1) multi-index."""
    n = g.n
    rank = p + q - 1
    comps = g.components.get(q, {})
    prefactor = Scalar.of(Fraction(-factorial(p), _binom(rank, p - 1)))
    out = {}
    for K in all_multi_indices(n, rank):
        acc = Poly.zero()
        for subset in itertools.combinations(range(rank), p - 1):
            sub = set(subset)
            ix = tuple(sorted(K[t] for t in subset))
            jg = tuple(sorted(K[t] for t in range(rank) if t not in sub))
            xf = x.grades.get(ix)
            gc = comps.get(jg)
            if xf is None or gc is None:
                continue
            acc = acc + xf.apply(gc)
        if not acc.is_zero():
            out[K] = acc.scale(prefactor)
    return out


def _pair_bracket_tag(s, t):
    """Generator bracket table; returns (coefficient, rhat tag) or None."""
    if s[0] == "q" and t[0] == "pi":
        return (1, rtag(s[2])) if s[1] == t[1] else None
    if s[0] == "pi" and t[0] == "q":
        return (-1, rtag(t[2])) if t[1] == s[1] else None
    return None


def _generator_bracket(f: Observable, g: Observable) -> Observable:
    """Route 2: biderivation expansion over generator monomials."""
    out: dict[GenMonomial, Scalar] = {}
    for mf, cf in f.genpoly.items():
        for mg, cg in g.genpoly.items():
            base = cf * cg
            for si, s in enumerate(mf):
                for ti, t in enumerate(mg):
                    hit = _pair_bracket_tag(s, t)
                    if hit is None:
                        continue
                    sign, tag = hit
                    mono = tuple(
                        sorted(mf[:si] + mf[si + 1 :] + mg[:ti] + mg[ti + 1 :] + (tag,))
                    )
                    c = base * Scalar.of(sign)
                    prev = out.get(mono)
                    acc = c if prev is None else prev + c
                    if acc.is_zero():
                        out.pop(mono, None)
                    else:
                        out[mono] = acc
    return Observable(f.n, out)


def bracket(
    f: Observable,
    g: Observable,
    gauge_seed: int | None = None,
) -> Observable:
    """Graded Poisson bracket of two observables.

    Extends bilinearly over grades; homogeneous ranks p and q land in rank
    p+q-1.  ``gauge_seed`` shifts the representative of f by a seeded
    random valid gauge term before applying it; the result must be (and is
    verified to be) unchanged.
    """
    f._require_same(g)
    result = _generator_bracket(f, g)
    expected = result.components
    computed: dict = {}
    rng = None
    if gauge_seed is not None:
        import random

        rng = random.Random(gauge_seed)
    for p in f.ranks():
        fp = f.grade_part(p)
        x = ham_vf(fp)
        if rng is not None and p >= 2:
            x = add_gauge(x, random_valid_gauge(f.n, p - 1, rng))
        for q in g.ranks():
            part = _bracket_components(x, p, g, q)
            grade = computed.setdefault(p + q - 1, {})
            for K, poly in part.items():
                prev = grade.get(K)
                acc = poly if prev is None else prev + poly
                if acc.is_zero():
                    grade.pop(K, None)
                else:
                    grade[K] = acc
    computed = {r: grade for r, grade in computed.items() if grade}
    if computed != expected:
        raise EngineError(
            "bracket routes disagree: structure-equation representative vs "
            f"generator expansion for {f!r} and {g!r}"
        )
    return result


def jacobi_residual(f: Observable, g: Observable, h: Observable) -> Observable:
    """{f,{g,h}} + {g,{h,f}} + {h,{f,g}}; identically zero."""
    return (
        bracket(f, bracket(g, h))
        + bracket(g, bracket(h, f))
        + bracket(h, bracket(f, g))
    )


class GradedBracketResult:
    """Bracket value together with its rank law.

    For homogeneous inputs of ranks p and q the value is zero or
    homogeneous of rank exactly p+q-1; ``holds`` records the law.
    """

    __slots__ = ("value", "expected_rank", "holds")

    def __init__(self, f: Observable, g: Observable):
        p, q = f.rank(), g.rank()
        self.value = bracket(f, g)
        self.expected_rank = p + q - 1
        self.holds = self.value.is_zero() or self.value.ranks() == [self.expected_rank]

    def __repr__(self):
        return (
            f"GradedBracketResult(value={self.value!r}, "
            f"expected_rank={self.expected_rank}, holds={self.holds})"
        )


def theorem1_constant(p: int, q: int) -> Fraction:
    """(p+q-1)! / (p! q!), the scaling between the two bracket notions."""
    return Fraction(factorial(p + q - 1), factorial(p) * factorial(q))


def theorem1_check(f: Observable, g: Observable) -> bool:
    """Verify C * X_{f,g} = [X_f, X_g] as equivalence classes.

    C = (p+q-1)!/(p!q!).  With this engine's sign convention (the bracket
    flipped to make {qhat, pihat} positive) the field bracket satisfies
    [X_f, X_g] = -C X_{{f,g}}, so the check is that -(1/C) [X_f, X_g] is a
    representative for {f,g}: equality is tested through the structure
    equation, which is gauge-invariant.
    """
    p, q = f.rank(), g.rank()
    c = theorem1_constant(p, q)
    candidate = vf_bracket(ham_vf(f), ham_vf(g)).scale(Fraction(-1, 1) / c)
    return structure_eq_check(bracket(f, g), candidate)


def grade_of_bracket(f: Observable, g: Observable) -> bool:
    """The rank law: the bracket is zero or homogeneous of rank p+q-1."""
    p, q = f.rank(), g.rank()
    result = bracket(f, g)
    return result.is_zero() or result.ranks() == [p + q - 1]


def tensor_extension_identity_check(
    f: Observable, g: Observable, k: int, l: int
) -> bool:
    """{f x rhat(1)^k, g x rhat(1)^l} = {f, g} x rhat(1)^(k+l)."""
    from .algebra import make_rhat, sym_mul, sym_pow

    n = f.n

    def extend(obs: Observable, m: int) -> Observable:
        if m == 0:
            return obs
        return sym_mul(obs, sym_pow(make_rhat(n, 1), m))

    lhs = bracket(extend(f, k), extend(g, l))
    rhs = extend(bracket(f, g), k + l)
    return lhs == rhs


_B1_KINDS = {"q", "pi", "r"}


def in_b1_algebra(f: Observable, slot: int = 1) -> bool:
    """Membership in the polynomial algebra over {qhat(i,slot), pihat(k), rhat(slot)}."""
    for tag in f.generator_tags():
        if tag[0] == "q" and tag[2] != slot:
            return False
        if tag[0] == "r" and tag[1] != slot:
            return False
    return True


def min_rank(f: Observable) -> int | None:
    """Smallest nonempty grade; None is the marker for the zero observable."""
    return f.min_rank()


def is_in_Pk(f: Observable, k: int, slot: int = 1) -> bool:
    """Membership in the ideal of elements of minimum rank >= k."""
    if not in_b1_algebra(f, slot):
        raise NotInGeneratorAlgebra(
            "observable is outside the polynomial algebra of the basic set"
        )
    r = f.min_rank()
    return True if r is None else r >= k
