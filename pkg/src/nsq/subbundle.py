"""The 2n-dimensional subbundle slices and the reduced observable algebra.

Freezing all coframe rows but one to the identity pattern,

    pi^A_j = delta^A_j   for A != slot,

cuts out a 2n-dimensional subbundle with coordinates Q^i = q^i and
P_j = pi^slot_j.  Its structure group is the semidirect product of the
nonzero reals with R^(n-1), embedded in GL(n) as the matrices that differ
from the identity only in the chosen row.  The pulled-back two-form is
dP_j ^ dQ^j concentrated in the one surviving vector slot, and the whole
polynomial algebra over {qhat(i,slot), pihat(k), rhat(slot)} descends to a
reduced algebra on the slice; the reduction is verified to be a bracket
homomorphism.

The default slot is 1, matching the parametrization by frames

    e_1 = alpha d/du^1,   e_A = d/du^A + mu_A d/du^1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping

from .algebra import (
    FramePoint,
    MultiIndex,
    Observable,
    all_multi_indices,
    check_dimension,
    check_index,
    sym_components,
)
from .errors import (
    DimensionMismatch,
    EngineError,
    NotInGeneratorAlgebra,
    RankMismatch,
)
from .forms import HamVF, TwoForm, VectorField, ham_vf, structure_eq_check
from .linalg import exact_det, exact_inverse, exact_rank
from .poisson import in_b1_algebra
from .polynomials import Poly, pivar, qvar
from .scalars import Scalar

# -- slice geometry -----------------------------------------------------------


def slice_check(u: FramePoint, slot: int = 1) -> bool:
    """True iff every coframe row other than ``slot`` is an identity row."""
    check_index(slot, u.n)
    for a in range(1, u.n + 1):
        if a == slot:
            continue
        for j in range(1, u.n + 1):
            if u.pi[a - 1][j - 1] != (1 if a == j else 0):
                return False
    return True


@dataclass
class SubbundlePoint:
    """Slice parametrization: base point, frame scale, and shears."""

    q: tuple
    alpha: Fraction
    mu: tuple

    def __post_init__(self):
        self.q = tuple(Fraction(x) for x in self.q)
        self.alpha = Fraction(self.alpha)
        self.mu = tuple(Fraction(x) for x in self.mu)
        if self.alpha == 0:
            raise ValueError("frame scale alpha must be nonzero")
        if len(self.mu) != len(self.q) - 1:
            raise DimensionMismatch("mu must have n-1 entries")


def frame_from_params(p: SubbundlePoint, slot: int = 1) -> FramePoint:
    """Frame point of the slice from its parameters.

    The frame matrix has e_slot = alpha d/du^slot and the other legs
    sheared into the slot direction; pi is its inverse, so det(pi) = 1/alpha.
    """
    n = len(p.q)
    check_index(slot, n)
    frame = [[Fraction(0)] * n for _ in range(n)]
    others = [b for b in range(1, n + 1) if b != slot]
    frame[slot - 1][slot - 1] = p.alpha
    for mu_val, b in zip(p.mu, others):
        frame[b - 1][b - 1] = Fraction(1)
        frame[slot - 1][b - 1] = mu_val
    pi = exact_inverse(frame)
    return FramePoint(p.q, pi)


# -- structure group ----------------------------------------------------------


@dataclass
class G1Element:
    """Element (a, b) of the semidirect product R* x R^(n-1)."""

    a: Fraction
    b: tuple

    def __post_init__(self):
        self.a = Fraction(self.a)
        self.b = tuple(Fraction(x) for x in self.b)
        if self.a == 0:
            raise ValueError("group element must have a != 0")


def g1_mul(g1: G1Element, g2: G1Element) -> G1Element:
    return G1Element(g1.a * g2.a, tuple(g1.a * y + x for x, y in zip(g1.b, g2.b)))


def g1_identity(n: int) -> G1Element:
    return G1Element(Fraction(1), (Fraction(0),) * (n - 1))


def g1_inv(g: G1Element) -> G1Element:
    return G1Element(1 / g.a, tuple(-x / g.a for x in g.b))


def g1_embed(g: G1Element, n: int, slot: int = 1) -> list[list[Fraction]]:
    """GL(n) matrix differing from the identity only in the chosen row."""
    if len(g.b) != n - 1:
        raise DimensionMismatch("group element size does not match dimension")
    m = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    m[slot - 1][slot - 1] = g.a
    others = [c for c in range(1, n + 1) if c != slot]
    for val, c in zip(g.b, others):
        m[slot - 1][c - 1] = val
    return m


def right_action(u: FramePoint, g: list[list[Fraction]]) -> FramePoint:
    """Right translation of a frame: pi(u.g) = g^{-1} pi(u), base unchanged."""
    if exact_det([list(r) for r in g]) == 0:
        raise ValueError("right translation requires an invertible matrix")
    ginv = exact_inverse([list(r) for r in g])
    n = u.n
    pi = [
        [sum(ginv[i][k] * u.pi[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    return FramePoint(u.q, pi)


# -- pullback of the two-form -------------------------------------------------


def slice_substitution(n: int, slot: int = 1) -> dict:
    """Variable map realizing the slice: frozen coframe rows become constants."""
    sub = {}
    for a in range(1, n + 1):
        if a == slot:
            continue
        for j in range(1, n + 1):
            sub[pivar(a, j)] = Poly.constant(1 if a == j else 0)
    return sub


def pullback_two_form(n: int, slot: int = 1) -> dict[int, TwoForm]:
    """Pull the soldering two-form back to the slice by substitution.

    Differentials of frozen variables vanish, so only the slot component
    survives: sum_j dP_j ^ dQ^j with P_j = pi^slot_j.
    """
    from .forms import soldering_dtheta

    check_index(slot, n)
    sub = slice_substitution(n, slot)
    frozen = set(sub)
    out: dict[int, TwoForm] = {}
    for i, omega in soldering_dtheta(n).items():
        kept: dict[tuple, Poly] = {}
        for (v1, v2), coeff in omega.coeffs.items():
            if v1 in frozen or v2 in frozen:
                continue
            c = coeff.substitute(sub)
            if not c.is_zero():
                kept[(v1, v2)] = c
        out[i] = TwoForm(kept)
    return out


def reduced_dtheta(n: int, slot: int = 1) -> dict[int, TwoForm]:
    """The intrinsic two-form of the slice, built directly in (Q, P)."""
    out = {i: TwoForm() for i in range(1, n + 1)}
    out[slot] = TwoForm(
        {(pivar(slot, j), qvar(j)): Poly.constant(1) for j in range(1, n + 1)}
    )
    return out


def two_form_rank(omega: TwoForm, n: int, slot: int = 1) -> int:
    """Exact rank of a constant-coefficient two-form on the slice tangent space."""
    basis = [qvar(j) for j in range(1, n + 1)] + [pivar(slot, j) for j in range(1, n + 1)]
    dim = len(basis)
    matrix = [[Fraction(0)] * dim for _ in range(dim)]
    for (v1, v2), coeff in omega.coeffs.items():
        if not coeff.is_constant():
            raise EngineError("rank check expects constant coefficients")
        c = coeff.constant_term().as_fraction()
        i, j = basis.index(v1), basis.index(v2)
        matrix[i][j] += c
        matrix[j][i] -= c
    return exact_rank(matrix)


# -- tangency and gauge fixing ------------------------------------------------


def tangency_check(x: HamVF, slot: int = 1) -> bool:
    """True iff no vertical component leaves the slice.

    Every coefficient on d/dpi^A_b with A != slot must vanish identically
    once the slice relations are substituted.
    """
    sub = slice_substitution(x.n, slot)
    for vf in x.grades.values():
        for (a, b), coeff in vf.v.items():
            if a == slot:
                continue
            if not coeff.substitute(sub).is_zero():
                return False
    return True


def gauge_fix_for_B1(f: Observable, slot: int = 1) -> HamVF:
    """Representative of the Hamiltonian class of f tangent to the slice.

    Requires f in the polynomial algebra of the slot's basic set.  The
    canonical factor-rule representative already has all vertical legs on
    d/dpi^slot_i, because each generator qhat(i,slot) carries the slot as
    its lower index; the gauge correction is therefore zero, and tangency
    is asserted rather than repaired.
    """
    if not in_b1_algebra(f, slot):
        raise NotInGeneratorAlgebra(
            f"observable uses generators outside the slot-{slot} basic algebra"
        )
    x = ham_vf(f)
    if not tangency_check(x, slot):
        raise EngineError("canonical representative unexpectedly not tangent")
    return x


# -- reduced observables ------------------------------------------------------


def _reduced_generator_components(tag, n: int, slot: int) -> dict[MultiIndex, Poly]:
    kind = tag[0]
    if kind == "Q":
        return {(slot,): Poly.var(qvar(tag[1]))}
    if kind == "Pi":
        k = tag[1]
        comps = {(slot,): Poly.var(pivar(slot, k))}
        if k != slot:
            comps[(k,)] = Poly.constant(1)
        return comps
    return {(slot,): Poly.constant(1)}


class ReducedObservable:
    """Observable on the slice, generated by Qhat(i), Pihat(k), rhat."""

    def __init__(self, n: int, genpoly: Mapping, slot: int = 1):
        self.n = check_dimension(n)
        self.slot = check_index(slot, n)
        self.genpoly: dict = {}
        for mono, c in genpoly.items():
            c = c if isinstance(c, Scalar) else Scalar.of(c)
            if not c.is_zero():
                self.genpoly[tuple(mono)] = c
        self._components = None

    @property
    def components(self) -> dict[int, dict[MultiIndex, Poly]]:
        if self._components is None:
            by_rank: dict[int, dict[MultiIndex, Poly]] = {}
            cache: dict = {}
            for mono, coeff in self.genpoly.items():
                comps = self._monomial_components(mono, cache)
                grade = by_rank.setdefault(len(mono), {})
                for K, poly in comps.items():
                    prev = grade.get(K)
                    acc = poly.scale(coeff)
                    acc = acc if prev is None else prev + acc
                    if acc.is_zero():
                        grade.pop(K, None)
                    else:
                        grade[K] = acc
            self._components = {r: g for r, g in by_rank.items() if g}
        return self._components

    def _monomial_components(self, mono, cache):
        if mono in cache:
            return cache[mono]
        if len(mono) == 1:
            comps = _reduced_generator_components(mono[0], self.n, self.slot)
        else:
            head = self._monomial_components(mono[:-1], cache)
            tail = _reduced_generator_components(mono[-1], self.n, self.slot)
            comps = sym_components(head, len(mono) - 1, tail, 1)
        cache[mono] = comps
        return comps

    def ranks(self) -> list[int]:
        return sorted(self.components)

    def is_zero(self) -> bool:
        return not self.components

    def rank(self) -> int:
        ranks = self.ranks()
        if len(ranks) != 1:
            raise ValueError(f"not homogeneous: ranks {ranks}")
        return ranks[0]

    def component(self, idx) -> Poly:
        key = tuple(sorted(idx))
        return self.components.get(len(key), {}).get(key, Poly.zero())

    def grade_part(self, rank: int) -> "ReducedObservable":
        part = {m: c for m, c in self.genpoly.items() if len(m) == rank}
        return ReducedObservable(self.n, part, self.slot)

    def __add__(self, other: "ReducedObservable") -> "ReducedObservable":
        out = dict(self.genpoly)
        for mono, c in other.genpoly.items():
            s = out.get(mono)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = s
        return ReducedObservable(self.n, out, self.slot)

    def __neg__(self):
        return ReducedObservable(
            self.n, {m: -c for m, c in self.genpoly.items()}, self.slot
        )

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, ReducedObservable):
            return NotImplemented
        return (
            self.n == other.n
            and self.slot == other.slot
            and self.components == other.components
        )

    __hash__ = None

    def __repr__(self):
        if not self.genpoly:
            return "0"
        parts = []
        for mono in sorted(self.genpoly):
            body = "*".join(_reduced_tag_str(t) for t in mono)
            cs = str(self.genpoly[mono])
            if cs == "1":
                parts.append(body)
            elif cs == "-1":
                parts.append("-" + body)
            else:
                parts.append(f"{cs} {body}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def _reduced_tag_str(tag) -> str:
    if tag[0] == "Q":
        return f"Qh({tag[1]})"
    if tag[0] == "Pi":
        return f"Pih({tag[1]})"
    return "rh"


def reduce_observable(f: Observable, slot: int = 1) -> ReducedObservable:
    """Restrict an observable of the basic algebra to the slice.

    Generator-wise: qhat(i,slot) -> Qhat(i), pihat(k) -> Pihat(k),
    rhat(slot) -> rhat.  The resulting components agree with substituting
    the slice relations into the original components.
    """
    if not in_b1_algebra(f, slot):
        raise NotInGeneratorAlgebra(
            f"observable uses generators outside the slot-{slot} basic algebra"
        )
    out: dict = {}
    for mono, c in f.genpoly.items():
        reduced = []
        for tag in mono:
            if tag[0] == "q":
                reduced.append(("Q", tag[1]))
            elif tag[0] == "pi":
                reduced.append(("Pi", tag[1]))
            else:
                reduced.append(("R",))
        key = tuple(sorted(reduced))
        prev = out.get(key)
        acc = c if prev is None else prev + c
        if acc.is_zero():
            out.pop(key, None)
        else:
            out[key] = acc
    return ReducedObservable(f.n, out, slot)


def substituted_components(f: Observable, slot: int = 1) -> dict:
    """Slice restriction done the long way: substitute into every component."""
    sub = slice_substitution(f.n, slot)
    out: dict[int, dict[MultiIndex, Poly]] = {}
    for rank, grade in f.components.items():
        new = {}
        for K, poly in grade.items():
            p = poly.substitute(sub)
            if not p.is_zero():
                new[K] = p
        if new:
            out[rank] = new
    return out


# -- reduced Hamiltonian fields and bracket -----------------------------------


def _reduced_generator_field(tag, slot: int) -> VectorField:
    kind = tag[0]
    if kind == "Q":
        return VectorField(v={(slot, tag[1]): Poly.constant(-1)})
    if kind == "Pi":
        return VectorField(h={tag[1]: Poly.constant(1)})
    return VectorField.zero()


def reduced_ham_vf(f: ReducedObservable) -> HamVF:
    """Canonical slice representative by the same factor rule as upstairs."""
    out: dict[MultiIndex, VectorField] = {}
    cache: dict = {}
    for mono, coeff in f.genpoly.items():
        r = len(mono)
        weight = coeff * Scalar.of(Fraction(1, factorial(r)))
        for m in range(r):
            base = _reduced_generator_field(mono[m], f.slot)
            if base.is_zero():
                continue
            rest = mono[:m] + mono[m + 1 :]
            if rest:
                rest_comps = f._monomial_components(rest, cache)
            else:
                rest_comps = {(): Poly.constant(1)}
            for idx, poly in rest_comps.items():
                contrib = base.mul_poly(poly.scale(weight))
                prev = out.get(idx)
                out[idx] = contrib if prev is None else prev + contrib
    return HamVF(f.n, out)


def reduced_structure_eq_check(f: ReducedObservable, x: HamVF) -> bool:
    """Structure equation on the slice, against the intrinsic two-form."""
    return structure_eq_check(f, x, dtheta=reduced_dtheta(f.n, f.slot))


def _binom(n: int, k: int) -> int:
    out = 1
    for t in range(k):
        out = out * (n - t) // (t + 1)
    return out


def reduced_bracket(f: ReducedObservable, g: ReducedObservable) -> ReducedObservable:
    """Intrinsic Poisson bracket on the slice.

    Computed from the defining formula with the intrinsic fields, and
    cross-checked against the generator-level expansion with
    {Qhat(i), Pihat(k)} = delta(i,k) rhat.
    """
    if f.n != g.n or f.slot != g.slot:
        raise DimensionMismatch("reduced observables live on different slices")
    expected = _reduced_generator_bracket(f, g)
    computed: dict = {}
    for p in f.ranks():
        fp = f.grade_part(p)
        x = reduced_ham_vf(fp)
        for q in g.ranks():
            rank = p + q - 1
            prefactor = Scalar.of(Fraction(-factorial(p), _binom(rank, p - 1)))
            comps = g.components.get(q, {})
            grade = computed.setdefault(rank, {})
            for K in all_multi_indices(f.n, rank):
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
                if acc.is_zero():
                    continue
                acc = acc.scale(prefactor)
                prev = grade.get(K)
                total = acc if prev is None else prev + acc
                if total.is_zero():
                    grade.pop(K, None)
                else:
                    grade[K] = total
    computed = {r: grade for r, grade in computed.items() if grade}
    if computed != expected.components:
        raise EngineError("reduced bracket routes disagree")
    return expected


def _reduced_generator_bracket(
    f: ReducedObservable, g: ReducedObservable
) -> ReducedObservable:
    out: dict = {}
    for mf, cf in f.genpoly.items():
        for mg, cg in g.genpoly.items():
            base = cf * cg
            for si, s in enumerate(mf):
                for ti, t in enumerate(mg):
                    if s[0] == "Q" and t[0] == "Pi":
                        sign, ok = 1, s[1] == t[1]
                    elif s[0] == "Pi" and t[0] == "Q":
                        sign, ok = -1, s[1] == t[1]
                    else:
                        ok = False
                    if not ok:
                        continue
                    mono = tuple(
                        sorted(
                            mf[:si] + mf[si + 1 :] + mg[:ti] + mg[ti + 1 :] + (("R",),)
                        )
                    )
                    c = base * Scalar.of(sign)
                    prev = out.get(mono)
                    acc = c if prev is None else prev + c
                    if acc.is_zero():
                        out.pop(mono, None)
                    else:
                        out[mono] = acc
    return ReducedObservable(f.n, out, f.slot)


def reduction_homomorphism_check(f: Observable, g: Observable, slot: int = 1) -> bool:
    """reduce({f, g}) = {reduce f, reduce g} on the slice."""
    from .poisson import bracket

    lhs = reduce_observable(bracket(f, g), slot)
    rhs = reduced_bracket(reduce_observable(f, slot), reduce_observable(g, slot))
    return lhs == rhs


def reduced_field_rows(
    generators: Iterable[Observable], point: FramePoint, slot: int = 1
) -> list[list[Fraction]]:
    """Slice-tangent coordinates of the reduced fields at a slice point.

    Columns are (d/dQ^1 .. d/dQ^n, d/dP_1 .. d/dP_n).
    """
    n = point.n
    vals = point.coordinate_values()
    rows = []
    for g in generators:
        x = reduced_ham_vf(reduce_observable(g, slot)).field(())
        row = []
        for a in range(1, n + 1):
            poly = x.h.get(a)
            row.append(poly.evaluate(vals).as_fraction() if poly is not None else Fraction(0))
        for j in range(1, n + 1):
            poly = x.v.get((slot, j))
            row.append(poly.evaluate(vals).as_fraction() if poly is not None else Fraction(0))
        rows.append(row)
    return rows
