"""Tensor-valued polynomial observables on the frame bundle of R^n.

The frame bundle carries global coordinates (q^i, pi^a_b) where the matrix
pi is invertible.  The observable universe of the engine is the algebra
generated, under the symmetric tensor product, by the rank-1 observables

    qhat(i, j) : component map  l -> q^i * delta(l, j)
    pihat(k)   : component map  l -> pi^l_k
    rhat(k)    : component map  l -> delta(l, k)

A general observable is graded: rank p >= 1 maps a nondecreasing
multi-index of length p to a polynomial component.  Components are stored
on canonical (sorted) multi-indices, so the required symmetry under index
permutations holds by representation.

Each Observable also remembers how it was assembled from the generators
(its ``genpoly``).  The component data alone does not determine that
decomposition -- e.g. qhat(i,j) sym rhat(k) and qhat(i,k) sym rhat(j)
expand to identical components -- but all derived quantities (brackets,
structure-equation checks) are independent of the choice, so any faithful
decomposition serves.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DimensionMismatch, IndexRangeError
from .linalg import exact_det
from .polynomials import Poly, pivar, qvar
from .scalars import Scalar

MultiIndex = tuple
GenTag = tuple
GenMonomial = tuple


def check_dimension(n: int) -> int:
    if not isinstance(n, int) or n < 1:
        raise IndexRangeError(f"dimension must be a positive integer, got {n!r}")
    return n


def check_index(i: int, n: int) -> int:
    if not isinstance(i, int) or not 1 <= i <= n:
        raise IndexRangeError(f"index {i!r} out of range 1..{n}")
    return i


def canonicalize(raw: Iterable[int], n: int) -> MultiIndex:
    """Sort a multi-index into canonical nondecreasing order."""
    idx = tuple(raw)
    for i in idx:
        check_index(i, n)
    return tuple(sorted(idx))


def all_multi_indices(n: int, rank: int) -> Iterable[MultiIndex]:
    """All canonical multi-indices of a given rank over 1..n."""
    return itertools.combinations_with_replacement(range(1, n + 1), rank)


class FramePoint:
    """A point of the frame bundle: base coordinates plus an invertible coframe matrix."""

    __slots__ = ("n", "q", "pi")

    def __init__(self, q: Iterable, pi: Iterable[Iterable]):
        self.q = tuple(Fraction(x) for x in q)
        self.n = len(self.q)
        self.pi = tuple(tuple(Fraction(x) for x in row) for row in pi)
        if len(self.pi) != self.n or any(len(r) != self.n for r in self.pi):
            raise DimensionMismatch("pi must be an n x n matrix")
        if exact_det([list(r) for r in self.pi]) == 0:
            raise ValueError("pi must be invertible: points are frames")

    def coordinate_values(self) -> dict:
        vals = {qvar(i + 1): self.q[i] for i in range(self.n)}
        for a in range(self.n):
            for b in range(self.n):
                vals[pivar(a + 1, b + 1)] = self.pi[a][b]
        return vals

    @staticmethod
    def identity(n: int, q: Iterable | None = None) -> "FramePoint":
        q = tuple(q) if q is not None else (0,) * n
        return FramePoint(q, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return (
            isinstance(other, FramePoint)
            and self.q == other.q
            and self.pi == other.pi
        )

    def __repr__(self):
        return f"FramePoint(q={self.q}, pi={self.pi})"


# -- generator tags ----------------------------------------------------------

def qtag(i: int, j: int) -> GenTag:
    return ("q", i, j)


def pitag(k: int) -> GenTag:
    return ("pi", k)


def rtag(k: int) -> GenTag:
    return ("r", k)


def tag_str(tag: GenTag) -> str:
    if tag[0] == "q":
        return f"qh({tag[1]},{tag[2]})"
    if tag[0] == "pi":
        return f"pih({tag[1]})"
    return f"rh({tag[1]})"


def monomial_str(mono: GenMonomial) -> str:
    return "*".join(tag_str(t) for t in mono) if mono else "1"


def _check_tag(tag: GenTag, n: int) -> None:
    if tag[0] == "q":
        check_index(tag[1], n)
        check_index(tag[2], n)
    else:
        check_index(tag[1], n)


def _generator_components(tag: GenTag, n: int) -> dict[MultiIndex, Poly]:
    kind = tag[0]
    if kind == "q":
        i, j = tag[1], tag[2]
        return {(j,): Poly.var(qvar(i))}
    if kind == "pi":
        k = tag[1]
        return {(l,): Poly.var(pivar(l, k)) for l in range(1, n + 1)}
    k = tag[1]
    return {(k,): Poly.constant(1)}


def sym_components(
    f: Mapping[MultiIndex, Poly], p: int, g: Mapping[MultiIndex, Poly], q: int
) -> dict[MultiIndex, Poly]:
    """Components of the normalized symmetric product of two homogeneous maps.

    The component at a sorted multi-index K of rank p+q is the average over
    all splits of K's positions into a p-subset fed to f and the complement
    fed to g.
    """
    rank = p + q
    weight = Scalar.of(
        Fraction(1, _binomial(rank, p))
    )
    candidates = set()
    for I in f:
        for J in g:
            candidates.add(tuple(sorted(I + J)))
    out: dict[MultiIndex, Poly] = {}
    for K in candidates:
        acc = Poly.zero()
        positions = range(rank)
        for subset in itertools.combinations(positions, p):
            sub = set(subset)
            fi = tuple(sorted(K[t] for t in subset))
            gj = tuple(sorted(K[t] for t in positions if t not in sub))
            cf = f.get(fi)
            cg = g.get(gj)
            if cf is None or cg is None:
                continue
            acc = acc + cf * cg
        if not acc.is_zero():
            out[K] = acc.scale(weight)
    return out


def _binomial(n: int, k: int) -> int:
    out = 1
    for t in range(k):
        out = out * (n - t) // (t + 1)
    return out


def _monomial_components(mono: GenMonomial, n: int, cache: dict) -> dict[MultiIndex, Poly]:
    """Expand one generator monomial into its symmetric-tensor components."""
    if mono in cache:
        return cache[mono]
    if len(mono) == 1:
        comps = _generator_components(mono[0], n)
    else:
        head = _monomial_components(mono[:-1], n, cache)
        tail = _generator_components(mono[-1], n)
        comps = sym_components(head, len(mono) - 1, tail, 1)
    cache[mono] = comps
    return comps


class Observable:
    """Graded symmetric-tensor-valued polynomial observable.

    Assemble these from :func:`make_qhat`, :func:`make_pihat`,
    :func:`make_rhat` with ``+``, ``-``, :meth:`scale` and
    :func:`sym_mul`.  Equality is structural equality of the expanded
    component maps.
    """

    def __init__(self, n: int, genpoly: Mapping[GenMonomial, Scalar]):
        self.n = check_dimension(n)
        self.genpoly: dict[GenMonomial, Scalar] = {}
        for mono, c in genpoly.items():
            c = c if isinstance(c, Scalar) else Scalar.of(c)
            if c.is_zero():
                continue
            for tag in mono:
                _check_tag(tag, n)
            self.genpoly[tuple(mono)] = c
        self._components: dict[int, dict[MultiIndex, Poly]] | None = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(n: int) -> "Observable":
        return Observable(n, {})

    @staticmethod
    def from_tag(n: int, tag: GenTag) -> "Observable":
        return Observable(n, {(tag,): Scalar.one()})

    # -- structure ----------------------------------------------------------

    @property
    def components(self) -> dict[int, dict[MultiIndex, Poly]]:
        """Graded component maps: rank -> canonical multi-index -> polynomial."""
        if self._components is None:
            by_rank: dict[int, dict[MultiIndex, Poly]] = {}
            cache: dict = {}
            for mono, coeff in self.genpoly.items():
                rank = len(mono)
                comps = _monomial_components(mono, self.n, cache)
                grade = by_rank.setdefault(rank, {})
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

    def ranks(self) -> list[int]:
        return sorted(self.components)

    def is_zero(self) -> bool:
        return not self.components

    def is_homogeneous(self) -> bool:
        return len(self.components) == 1

    def rank(self) -> int:
        """The rank of a homogeneous observable."""
        ranks = self.ranks()
        if len(ranks) != 1:
            raise ValueError(f"observable is not homogeneous: ranks {ranks}")
        return ranks[0]

    def component(self, idx: Iterable[int]) -> Poly:
        key = canonicalize(idx, self.n)
        grade = self.components.get(len(key), {})
        return grade.get(key, Poly.zero())

    def grade_part(self, rank: int) -> "Observable":
        """The homogeneous part of one rank, as an observable."""
        part = {m: c for m, c in self.genpoly.items() if len(m) == rank}
        return Observable(self.n, part)

    def min_rank(self) -> int | None:
        """Smallest nonempty grade; None marks the zero observable."""
        ranks = self.ranks()
        return ranks[0] if ranks else None

    # -- algebra -------------------------------------------------------------

    def _require_same(self, other: "Observable") -> None:
        if self.n != other.n:
            raise DimensionMismatch(f"dimensions differ: {self.n} vs {other.n}")

    def __add__(self, other: "Observable") -> "Observable":
        self._require_same(other)
        out = dict(self.genpoly)
        for mono, c in other.genpoly.items():
            s = out.get(mono)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = s
        return Observable(self.n, out)

    def __neg__(self) -> "Observable":
        return Observable(self.n, {m: -c for m, c in self.genpoly.items()})

    def __sub__(self, other: "Observable") -> "Observable":
        return self + (-other)

    def scale(self, c) -> "Observable":
        c = c if isinstance(c, Scalar) else Scalar.of(c)
        return Observable(self.n, {m: coeff * c for m, coeff in self.genpoly.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Observable):
            return NotImplemented
        return self.n == other.n and self.components == other.components

    __hash__ = None

    def generator_tags(self) -> set:
        out = set()
        for mono in self.genpoly:
            out.update(mono)
        return out

    def __repr__(self):
        if not self.genpoly:
            return "0"
        parts = []
        for mono in sorted(self.genpoly):
            c = self.genpoly[mono]
            cs = str(c)
            body = monomial_str(mono)
            if cs == "1":
                parts.append(body)
            elif cs == "-1":
                parts.append("-" + body)
            else:
                cs = f"({cs})" if ("+" in cs or " - " in cs) else cs
                parts.append(f"{cs} {body}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def make_qhat(n: int, i: int, j: int) -> Observable:
    """The rank-1 observable q^i placed in the j-th tensor slot."""
    check_index(i, n)
    check_index(j, n)
    return Observable.from_tag(n, qtag(i, j))


def make_pihat(n: int, k: int) -> Observable:
    """The rank-1 momentum observable with components pi^l_k."""
    check_index(k, n)
    return Observable.from_tag(n, pitag(k))


def make_rhat(n: int, k: int) -> Observable:
    """The constant rank-1 basis observable."""
    check_index(k, n)
    return Observable.from_tag(n, rtag(k))


def sym_mul(f: Observable, g: Observable) -> Observable:
    """Symmetric tensor product, normalized so repeated factors square cleanly.

    Bilinear; homogeneous ranks p and q multiply to rank p+q.  Commutative
    and associative.
    """
    f._require_same(g)
    out: dict[GenMonomial, Scalar] = {}
    for m1, c1 in f.genpoly.items():
        for m2, c2 in g.genpoly.items():
            mono = tuple(sorted(m1 + m2))
            c = c1 * c2
            s = out.get(mono)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = s
    return Observable(f.n, out)


def sym_pow(f: Observable, k: int) -> Observable:
    if k < 1:
        raise ValueError("symmetric power must be >= 1")
    out = f
    for _ in range(k - 1):
        out = sym_mul(out, f)
    return out


def evaluate(f: Observable, u: FramePoint) -> dict[MultiIndex, Scalar]:
    """Evaluate all components at a frame point.

    Returns one entry per canonical multi-index of every nonempty rank,
    including exact zeros, so the caller sees each grade in full.
    """
    if u.n != f.n:
        raise DimensionMismatch(f"point dimension {u.n} != observable dimension {f.n}")
    vals = u.coordinate_values()
    out: dict[MultiIndex, Scalar] = {}
    for rank, grade in f.components.items():
        for K in all_multi_indices(f.n, rank):
            poly = grade.get(K)
            out[K] = poly.evaluate(vals) if poly is not None else Scalar.zero()
    return out
