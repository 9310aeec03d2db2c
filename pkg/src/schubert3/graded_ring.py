"""Graded commutative rings over the integers, presented by generators and relations.

Everything here is exact.  Coefficients are arbitrary-precision integers, and a
quotient by a homogeneous ideal is computed one degree at a time: the relation
multiples of each degree are put into a unit-pivot integer echelon form, the
surviving monomials form the canonical basis of that graded piece, and normal
forms are obtained by reducing against the echelon rows.  Monomials inside a
degree are ordered by descending lexicographic order on exponent vectors, so
every normal form is canonical for a fixed generator order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

__all__ = [
    "GeneratorSpec",
    "GradedBasis",
    "GradedRingPresentation",
    "Monomial",
    "PolyRing",
    "RingElement",
    "TorsionError",
    "in_ideal_span",
    "present_ring",
    "substitute",
]

# Exponent vector aligned with a ring's generator order.
Monomial = tuple


class TorsionError(ValueError):
    """A graded piece is not integrally spanned by monomials with unit pivots."""


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    degree: int

    def __post_init__(self) -> None:
        if not self.name or not (self.name[0].isalpha()):
            raise ValueError(f"bad generator name {self.name!r}")
        if self.degree < 1:
            raise ValueError(f"generator {self.name!r}: degree must be a positive integer")


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and g == a*x + b*y."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _int_echelon(rows: Iterable[Sequence[int]], ncols: int) -> list[tuple[int, list[int]]]:
    """Integer row echelon form with positive pivots (no unit normalization).

    Returns a list of (pivot column, row) with strictly increasing pivot
    columns.  The input rows are consumed as spans; the result spans the same
    integer row lattice.
    """
    work = [list(r) for r in rows if any(r)]
    result: list[tuple[int, list[int]]] = []
    for col in range(ncols):
        src = [r for r in work if r[col]]
        if not src:
            continue
        piv = src[0]
        for r in src[1:]:
            a, b = piv[col], r[col]
            if b % a == 0:
                q = b // a
                for j in range(col, ncols):
                    r[j] -= q * piv[j]
            else:
                g, x, y = _xgcd(a, b)
                aa, bb = a // g, b // g
                for j in range(col, ncols):
                    pj, rj = piv[j], r[j]
                    piv[j] = x * pj + y * rj
                    r[j] = aa * rj - bb * pj
        work = [r for r in work if r is not piv and any(r)]
        if piv[col] < 0:
            piv[:] = [-v for v in piv]
        result.append((col, piv))
    return result


def _reduce_mod_echelon(vec: list[int], echelon: Sequence[tuple[int, list[int]]]) -> list[int]:
    """Subtract integer multiples of echelon rows; remainder may be nonzero."""
    n = len(vec)
    out = list(vec)
    for col, row in echelon:
        c = out[col]
        if c and c % row[col] == 0:
            q = c // row[col]
            for j in range(col, n):
                out[j] -= q * row[j]
    return out


class PolyRing:
    """Free graded-commutative polynomial ring over Z with named generators."""

    def __init__(self, generators: Iterable[Union[GeneratorSpec, tuple[str, int]]]) -> None:
        specs = []
        for g in generators:
            specs.append(g if isinstance(g, GeneratorSpec) else GeneratorSpec(*g))
        names = [g.name for g in specs]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self.generators: tuple[GeneratorSpec, ...] = tuple(specs)
        self.degrees: tuple[int, ...] = tuple(g.degree for g in specs)
        self.index: dict[str, int] = {g.name: i for i, g in enumerate(specs)}
        self._mono_cache: dict[int, tuple[Monomial, ...]] = {}

    def __repr__(self) -> str:
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"{type(self).__name__}({gens})"

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def monomial_degree(self, mono: Monomial) -> int:
        return sum(e * d for e, d in zip(mono, self.degrees))

    def monomials_of_degree(self, d: int) -> tuple[Monomial, ...]:
        """All exponent vectors of weighted degree d, descending lex order."""
        if d < 0:
            return ()
        if d not in self._mono_cache:
            self._mono_cache[d] = tuple(_enumerate_monomials(self.degrees, d))
        return self._mono_cache[d]

    # Quotient subclasses override this; the free ring only strips zeros.
    def _reduce(self, terms: dict[Monomial, int]) -> dict[Monomial, int]:
        return {m: c for m, c in terms.items() if c}

    def element(self, terms: Mapping[Monomial, int]) -> "RingElement":
        return RingElement(self, terms)

    def zero(self) -> "RingElement":
        return RingElement(self, {})

    def one(self) -> "RingElement":
        return RingElement(self, {(0,) * self.ngens: 1})

    def monomial(self, mono: Monomial, coeff: int = 1) -> "RingElement":
        return RingElement(self, {tuple(mono): coeff})

    def gen(self, name: str) -> "RingElement":
        if name not in self.index:
            raise ValueError(f"unknown generator {name!r}")
        i = self.index[name]
        return self.monomial(tuple(1 if j == i else 0 for j in range(self.ngens)))

    def gens(self) -> tuple["RingElement", ...]:
        return tuple(self.gen(g.name) for g in self.generators)


def _enumerate_monomials(degrees: Sequence[int], d: int) -> Iterator[Monomial]:
    if not degrees:
        if d == 0:
            yield ()
        return
    head = degrees[0]
    tail = degrees[1:]
    for e in range(d // head, -1, -1):
        for rest in _enumerate_monomials(tail, d - e * head):
            yield (e,) + rest


class RingElement:
    """Ring element stored in canonical normal form.

    Elements belong to a specific ring object; arithmetic between different
    rings is rejected rather than coerced.  Terms need not be homogeneous.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, int]) -> None:
        clean: dict[Monomial, int] = {}
        for mono, coeff in terms.items():
            if not coeff:
                continue
            mono = tuple(mono)
            if len(mono) != ring.ngens or any(e < 0 or not isinstance(e, int) for e in mono):
                raise ValueError(f"bad exponent vector {mono!r} for {ring!r}")
            if not isinstance(coeff, int):
                raise ValueError(f"non-integer coefficient {coeff!r}")
            clean[mono] = clean.get(mono, 0) + coeff
        self.ring = ring
        self.terms = ring._reduce(clean)

    def _coerce(self, other) -> "RingElement | None":
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise ValueError("elements belong to different rings")
            return other
        if isinstance(other, int):
            return RingElement(self.ring, {(0,) * self.ring.ngens: other})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return RingElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) - c
        return RingElement(self.ring, out)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return RingElement(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = RingElement(self.ring, {(0,) * self.ring.ngens: 1})
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = RingElement(self.ring, {(0,) * self.ring.ngens: other})
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    __hash__ = None  # normal forms compare by value; elements are not hashable

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: Monomial) -> int:
        return self.terms.get(tuple(mono), 0)

    def homogeneous_components(self) -> dict[int, "RingElement"]:
        by_deg: dict[int, dict[Monomial, int]] = {}
        for m, c in self.terms.items():
            by_deg.setdefault(self.ring.monomial_degree(m), {})[m] = c
        return {d: RingElement(self.ring, t) for d, t in sorted(by_deg.items())}

    def is_homogeneous(self) -> bool:
        degs = {self.ring.monomial_degree(m) for m in self.terms}
        return len(degs) <= 1

    def degree(self) -> int | None:
        """Degree of a homogeneous element; None for zero; error when mixed."""
        degs = {self.ring.monomial_degree(m) for m in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop()

    def homogeneous_component(self, d: int) -> "RingElement":
        return RingElement(
            self.ring,
            {m: c for m, c in self.terms.items() if self.ring.monomial_degree(m) == d},
        )

    def __str__(self) -> str:
        return format_terms(self.ring, self.terms)

    def __repr__(self) -> str:
        return f"<{format_terms(self.ring, self.terms)}>"


def format_terms(ring: PolyRing, terms: Mapping[Monomial, int]) -> str:
    """Render a term dict with explicit signs, sorted by (degree, lex order)."""
    if not terms:
        return "0"
    monos = sorted(
        terms,
        key=lambda m: (ring.monomial_degree(m), tuple(-e for e in m)),
    )
    parts: list[str] = []
    for m in monos:
        c = terms[m]
        factors = []
        for spec, e in zip(ring.generators, m):
            if e == 1:
                factors.append(spec.name)
            elif e > 1:
                factors.append(f"{spec.name}^{e}")
        body = "*".join(factors)
        mag = abs(c)
        if not body:
            piece = str(mag)
        elif mag == 1:
            piece = body
        else:
            piece = f"{mag}*{body}"
        if not parts:
            parts.append(piece if c > 0 else "-" + _guard_unary(piece))
        else:
            parts.append(("+ " if c > 0 else "- ") + piece)
    return " ".join(parts)


def _guard_unary(piece: str) -> str:
    """Parenthesize when a leading '-' would bind tighter than the '^'.

    The expression grammar applies an exponent to a negated base, so a
    bare "-t^2" would read back as (-t)^2; only a first factor carrying
    an exponent needs the guard.
    """
    if "^" in piece.split("*", 1)[0]:
        return f"({piece})"
    return piece


@dataclass(frozen=True)
class GradedBasis:
    degree: int
    monomials: tuple[Monomial, ...]

    @property
    def rank(self) -> int:
        return len(self.monomials)


class GradedRingPresentation(PolyRing):
    """Quotient of a free graded ring by a homogeneous ideal, over Z.

    The presentation carries a top degree and a top class monomial whose
    graded piece must be free of rank one; `evaluate_top` reads off the
    integral of the top-degree component against that monomial.  Construction
    fails loudly on non-homogeneous relations, torsion (or any graded piece
    without a unit-pivot monomial basis), a top piece of rank != 1, and
    quotients that do not vanish above the top degree.
    """

    def __init__(
        self,
        generators: Iterable[Union[GeneratorSpec, tuple[str, int]]],
        relations: Sequence[Union["RingElement", Mapping[Monomial, int]]],
        top_degree: int,
        top_class: Union["RingElement", Monomial],
    ) -> None:
        super().__init__(generators)
        if top_degree < 0:
            raise ValueError("top_degree must be non-negative")
        self.top_degree = top_degree

        rels: list[dict[Monomial, int]] = []
        for r in relations:
            terms = dict(r.terms) if isinstance(r, RingElement) else {tuple(m): c for m, c in r.items()}
            terms = {m: c for m, c in terms.items() if c}
            if not terms:
                continue
            for m in terms:
                if len(m) != self.ngens:
                    raise ValueError("relation uses a different generator tuple")
            degs = {self.monomial_degree(m) for m in terms}
            if len(degs) > 1:
                raise ValueError(f"relation {format_terms(self, terms)!r} is not homogeneous")
            if degs.pop() == 0:
                raise ValueError("constant relation would collapse the ring")
            rels.append(terms)
        self.relations: tuple[dict[Monomial, int], ...] = tuple(rels)

        if isinstance(top_class, RingElement):
            if set(top_class.terms.values()) != {1} or len(top_class.terms) != 1:
                raise ValueError("top_class must be a single monomial with coefficient 1")
            top_class = next(iter(top_class.terms))
        self.top_class: Monomial = tuple(top_class)
        if self.monomial_degree(self.top_class) != top_degree:
            raise ValueError("top_class degree differs from top_degree")

        self._mono_index: dict[int, dict[Monomial, int]] = {}
        self._degree_reducers: dict[int, list[tuple[int, list[int]]]] = {}
        self._bases: dict[int, GradedBasis] = {}

        window = max(self.degrees) if self.degrees else 0
        for d in range(top_degree + window + 1):
            self._build_degree(d)
        for d in range(top_degree + 1, top_degree + window + 1):
            if self._bases[d].rank != 0:
                raise ValueError(
                    f"graded piece of degree {d} does not vanish above the top degree"
                )

        top_basis = self._bases[top_degree]
        if top_basis.rank != 1:
            raise ValueError(
                f"top graded piece has rank {top_basis.rank}, expected rank 1"
            )
        self._top_monomial = top_basis.monomials[0]
        nf_top = self._reduce({self.top_class: 1})
        unit = nf_top.get(self._top_monomial, 0)
        if set(nf_top) != {self._top_monomial} or unit not in (1, -1):
            raise ValueError("top_class does not generate the top graded piece")
        self._top_unit = unit

    def _build_degree(self, d: int) -> None:
        monos = self.monomials_of_degree(d)
        index = {m: i for i, m in enumerate(monos)}
        rows: list[list[int]] = []
        for rel in self.relations:
            rel_deg = self.monomial_degree(next(iter(rel)))
            for mult in self.monomials_of_degree(d - rel_deg):
                vec = [0] * len(monos)
                for m, c in rel.items():
                    prod = tuple(a + b for a, b in zip(mult, m))
                    vec[index[prod]] += c
                rows.append(vec)
        echelon = _int_echelon(rows, len(monos))
        for col, row in echelon:
            if row[col] != 1:
                raise TorsionError(
                    f"degree {d}: pivot {row[col]} at monomial "
                    f"{format_terms(self, {monos[col]: 1})}; graded piece has torsion "
                    "or no unit monomial basis"
                )
        # clear entries above later pivots so reduction is a single pass
        for i, (col, row) in enumerate(echelon):
            for col2, row2 in echelon[i + 1 :]:
                c = row[col2]
                if c:
                    for j in range(col2, len(monos)):
                        row[j] -= c * row2[j]
        pivot_cols = {col for col, _ in echelon}
        basis = tuple(m for i, m in enumerate(monos) if i not in pivot_cols)
        self._mono_index[d] = index
        self._degree_reducers[d] = echelon
        self._bases[d] = GradedBasis(d, basis)

    def _reduce(self, terms: dict[Monomial, int]) -> dict[Monomial, int]:
        out: dict[Monomial, int] = {}
        by_deg: dict[int, dict[Monomial, int]] = {}
        for m, c in terms.items():
            by_deg.setdefault(self.monomial_degree(m), {})[m] = c
        for d, comp in by_deg.items():
            if d > self.top_degree:
                continue  # validated to vanish above the top degree
            monos = self.monomials_of_degree(d)
            index = self._mono_index[d]
            vec = [0] * len(monos)
            for m, c in comp.items():
                vec[index[m]] += c
            for col, row in self._degree_reducers[d]:
                c = vec[col]
                if c:
                    for j in range(col, len(monos)):
                        vec[j] -= c * row[j]
            for i, c in enumerate(vec):
                if c:
                    out[monos[i]] = c
        return out

    def graded_basis(self, d: int) -> GradedBasis:
        if not 0 <= d <= self.top_degree:
            raise ValueError(f"degree {d} outside 0..{self.top_degree}")
        return self._bases[d]

    def graded_ranks(self) -> tuple[int, ...]:
        return tuple(self._bases[d].rank for d in range(self.top_degree + 1))

    def evaluate_top(self, e: RingElement) -> int:
        """Integral of the top-degree component against the top class."""
        if e.ring is not self:
            raise ValueError("element belongs to a different ring")
        return self._top_unit * e.terms.get(self._top_monomial, 0)


def present_ring(
    generators: Iterable[Union[GeneratorSpec, tuple[str, int]]],
    relations: Sequence[Union[RingElement, Mapping[Monomial, int]]],
    top_degree: int,
    top_class: Union[RingElement, Monomial],
) -> GradedRingPresentation:
    """Build a graded quotient ring; see GradedRingPresentation."""
    return GradedRingPresentation(generators, relations, top_degree, top_class)


def substitute(
    e: RingElement,
    target: PolyRing,
    images: Mapping[str, RingElement],
) -> RingElement:
    """Apply the ring map defined by generator images to an element.

    Every generator of e's ring with a nonzero exponent somewhere in e must
    have an image in `images`, and all images must live in `target`.
    """
    out = target.zero()
    for mono, coeff in e.terms.items():
        term = coeff * target.one()
        for spec, exp in zip(e.ring.generators, mono):
            if not exp:
                continue
            if spec.name not in images:
                raise ValueError(f"no image given for generator {spec.name!r}")
            term = term * images[spec.name] ** exp
        out = out + term
    return out


def in_ideal_span(e: RingElement, relations: Sequence[RingElement]) -> bool:
    """Exact membership of e in the ideal generated by homogeneous relations.

    Works degree by degree over Z in the ambient free ring: the degree-d slice
    of the ideal is spanned by monomial multiples of the relations, and
    membership is integer reduction against its echelon form.
    """
    ring = e.ring
    rels = []
    for r in relations:
        if r.ring is not ring:
            raise ValueError("relations must live in the same ring as the element")
        if not r.is_homogeneous() or r.is_zero():
            raise ValueError("relations must be nonzero homogeneous elements")
        rels.append(r)
    for d, comp in e.homogeneous_components().items():
        monos = ring.monomials_of_degree(d)
        index = {m: i for i, m in enumerate(monos)}
        rows = []
        for r in rels:
            rdeg = r.degree()
            for mult in ring.monomials_of_degree(d - rdeg):
                vec = [0] * len(monos)
                for m, c in r.terms.items():
                    vec[index[tuple(a + b for a, b in zip(mult, m))]] += c
                rows.append(vec)
        echelon = _int_echelon(rows, len(monos))
        vec = [0] * len(monos)
        for m, c in comp.terms.items():
            vec[index[m]] = c
        if any(_reduce_mod_echelon(vec, echelon)):
            return False
    return True


def solve_integer_combination(
    rows: Sequence[Sequence[int]], vec: Sequence[int]
) -> list[int] | None:
    """Solve x . rows = vec exactly over Q and return x when it is integral.

    Returns None when the system is inconsistent or the solution is not
    integral.  Rows must be linearly independent.
    """
    m = len(rows)
    n = len(vec)
    # transpose: columns are the row vectors, solve A x = vec with Fractions
    a = [[Fraction(rows[j][i]) for j in range(m)] for i in range(n)]
    b = [Fraction(v) for v in vec]
    row_i = 0
    pivots: list[tuple[int, int]] = []
    for col in range(m):
        piv = None
        for r in range(row_i, n):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            continue
        a[row_i], a[piv] = a[piv], a[row_i]
        b[row_i], b[piv] = b[piv], b[row_i]
        inv = 1 / a[row_i][col]
        a[row_i] = [v * inv for v in a[row_i]]
        b[row_i] *= inv
        for r in range(n):
            if r != row_i and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[row_i])]
                b[r] -= f * b[row_i]
        pivots.append((row_i, col))
        row_i += 1
    x = [Fraction(0)] * m
    for r, col in pivots:
        x[col] = b[r]
    for r in range(len(pivots), n):
        if b[r]:
            return None
    if any(v.denominator != 1 for v in x):
        return None
    return [int(v) for v in x]
