"""Exact projective line geometry cross-checking the symbolic counts.

Everything runs over the rationals (or a quadratic extension when a
discriminant is not a perfect square): points and lines carry canonical
integer coordinates, incidence is the polarized Pluecker pairing, and the
four-lines problem is solved by exact kernel computation plus one binary
quadratic.  Tangency counting for pencils goes through resultants of exact
binary forms, so a vanishing discriminant is a certified double root, not
a numerical coincidence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm
import random
from typing import Iterable, Mapping, Sequence, Union

from .graded_ring import PolyRing, substitute

__all__ = [
    "DegeneratePencil",
    "PlueckerLine",
    "ProjectivePoint",
    "QNum",
    "SolutionSet",
    "SurfaceForm",
    "incidence_form",
    "lines_meeting_four",
    "pencil_discriminant",
    "pencil_tangency_count",
    "plucker_from_points",
    "random_four_lines",
    "random_line",
    "random_pencil_instance",
    "random_projective_point",
    "random_surface_form",
]

Rational = Union[int, Fraction]


class QNum:
    """Exact number a + b*sqrt(d) in a quadratic extension of the rationals.

    d may be negative; nothing here takes real parts.  Arithmetic mixes
    freely with ints and Fractions, and two QNums can combine only when
    their radicands agree.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Rational, b: Rational = 0, d: int = 0) -> None:
        a, b = Fraction(a), Fraction(b)
        if b == 0:
            d = 0
        if d == 0:
            b = Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", int(d))

    def _coerce(self, other) -> "QNum | None":
        if isinstance(other, QNum):
            if self.d and other.d and self.d != other.d:
                raise ValueError("cannot mix different quadratic extensions")
            return other
        if isinstance(other, (int, Fraction)):
            return QNum(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QNum(self.a + other.a, self.b + other.b, self.d or other.d)

    __radd__ = __add__

    def __neg__(self):
        return QNum(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = self.d or other.d
        return QNum(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QNum":
        return QNum(self.a, -self.b, self.d)

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.d))

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        root = f"sqrt({self.d})"
        if abs(self.b) != 1:
            root = f"{abs(self.b)}*{root}"
        sign = "-" if self.b < 0 else "+"
        if self.a == 0:
            return root if self.b > 0 else f"-{root}"
        return f"{self.a} {sign} {root}"

    def __repr__(self) -> str:
        return f"QNum({self.a!r}, {self.b!r}, {self.d!r})"


def _canonical_int_vector(vec: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a nonzero rational vector to coprime integers, first sign positive."""
    denom = 1
    for x in vec:
        denom = lcm(denom, x.denominator)
    ints = [int(x * denom) for x in vec]
    content = 0
    for v in ints:
        content = gcd(content, v)
    ints = [v // content for v in ints]
    first = next(v for v in ints if v)
    if first < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def _canonical_qnum_vector(vec: Sequence[QNum]) -> tuple[QNum, ...]:
    denom = 1
    for x in vec:
        denom = lcm(denom, x.a.denominator, x.b.denominator)
    scaled = [x * denom for x in vec]
    content = 0
    for x in scaled:
        content = gcd(content, int(x.a), int(x.b))
    scaled = [x * Fraction(1, content) for x in scaled]
    first = next(x for x in scaled if x)
    if first.a < 0 or (first.a == 0 and first.b < 0):
        scaled = [-x for x in scaled]
    return tuple(scaled)


class ProjectivePoint:
    """Point of projective 3-space with canonical coprime integer coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[Rational]) -> None:
        vec = [Fraction(x) for x in coords]
        if len(vec) != 4:
            raise ValueError("a projective point has 4 homogeneous coordinates")
        if not any(vec):
            raise ValueError("homogeneous coordinates must not all vanish")
        object.__setattr__(self, "coords", _canonical_int_vector(vec))

    def __setattr__(self, name, value):
        raise AttributeError("ProjectivePoint is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjectivePoint) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"ProjectivePoint({list(self.coords)!r})"

    def __str__(self) -> str:
        return "[" + " : ".join(str(c) for c in self.coords) + "]"


_COORD_NAMES = ("p01", "p02", "p03", "p23", "p31", "p12")


class PlueckerLine:
    """Line of projective 3-space in Pluecker coordinates.

    Coordinates are canonical coprime integers when rational; solutions of
    a four-lines problem with irrational discriminant carry QNum entries
    instead.  Construction rejects vectors off the Pluecker quadric.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[Union[Rational, QNum]]) -> None:
        raw = list(coords)
        if len(raw) != 6:
            raise ValueError("a line has 6 Pluecker coordinates")
        if any(isinstance(x, QNum) and x.d for x in raw):
            vec = _canonical_qnum_vector(
                [x if isinstance(x, QNum) else QNum(x) for x in raw]
            )
        else:
            frac = [Fraction(x.a if isinstance(x, QNum) else x) for x in raw]
            if not any(frac):
                raise ValueError("Pluecker coordinates must not all vanish")
            vec = _canonical_int_vector(frac)
        object.__setattr__(self, "coords", tuple(vec))
        q = self.quadric_value()
        if q != 0:
            raise ValueError(f"coordinates violate the Pluecker quadric: {q}")

    def __setattr__(self, name, value):
        raise AttributeError("PlueckerLine is immutable")

    def quadric_value(self):
        p01, p02, p03, p23, p31, p12 = self.coords
        return p01 * p23 + p02 * p31 + p03 * p12

    @property
    def is_rational(self) -> bool:
        return all(not isinstance(x, QNum) for x in self.coords)

    def conjugate(self) -> "PlueckerLine":
        return PlueckerLine(
            [x.conjugate() if isinstance(x, QNum) else x for x in self.coords]
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, PlueckerLine) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"PlueckerLine({list(self.coords)!r})"

    def __str__(self) -> str:
        body = ", ".join(f"{n}={c}" for n, c in zip(_COORD_NAMES, self.coords))
        return f"({body})"


def plucker_from_points(p: ProjectivePoint, q: ProjectivePoint) -> PlueckerLine:
    """Line spanned by two distinct points, as canonical wedge coordinates."""
    x, y = p.coords, q.coords
    pairs = ((0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2))
    wedge = [x[i] * y[j] - x[j] * y[i] for i, j in pairs]
    if not any(wedge):
        raise ValueError("coincident points span no line")
    return PlueckerLine(wedge)


def incidence_form(l1: PlueckerLine, l2: PlueckerLine):
    """Polarized quadric pairing; zero exactly when the lines meet."""
    a = l1.coords
    b = l2.coords
    return (
        a[0] * b[3]
        + a[3] * b[0]
        + a[1] * b[4]
        + a[4] * b[1]
        + a[2] * b[5]
        + a[5] * b[2]
    )


@dataclass(frozen=True)
class SolutionSet:
    """Solutions of an incidence problem: a finite weighted list or a family."""

    infinite: bool
    solutions: tuple[tuple[PlueckerLine, int], ...] = ()

    def __post_init__(self) -> None:
        if self.infinite and self.solutions:
            raise ValueError("an infinite family carries no solution list")
        if any(mult < 1 for _, mult in self.solutions):
            raise ValueError("multiplicities must be positive")

    @classmethod
    def infinite_family(cls) -> "SolutionSet":
        return cls(infinite=True)

    @classmethod
    def finite(cls, pairs: Iterable[tuple[PlueckerLine, int]]) -> "SolutionSet":
        return cls(infinite=False, solutions=tuple(pairs))

    @property
    def total_multiplicity(self) -> int:
        return sum(mult for _, mult in self.solutions)


def _rational_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Canonical integer basis of the right kernel, one vector per free column."""
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        lead = mat[r][col]
        mat[r] = [x / lead for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    basis = []
    for j in range(ncols):
        if j in pivots:
            continue
        v = [Fraction(0)] * ncols
        v[j] = Fraction(1)
        for row, pc in zip(mat, pivots):
            v[pc] = -row[j]
        basis.append(_canonical_int_vector(v))
    return basis


def _quadric_on(vec: Sequence[int]) -> int:
    return vec[0] * vec[3] + vec[1] * vec[4] + vec[2] * vec[5]


def _polar_on(u: Sequence[int], v: Sequence[int]) -> int:
    return (
        u[0] * v[3]
        + u[3] * v[0]
        + u[1] * v[4]
        + u[4] * v[1]
        + u[2] * v[5]
        + u[5] * v[2]
    )


def lines_meeting_four(
    l1: PlueckerLine, l2: PlueckerLine, l3: PlueckerLine, l4: PlueckerLine
) -> SolutionSet:
    """All lines meeting four given pairwise distinct lines.

    The four incidence conditions are linear on the quadric; their exact
    rational kernel is intersected with the quadric.  A kernel of dimension
    3 or more, or a kernel pencil lying inside the quadric, gives an
    infinite family; otherwise the binary quadratic has exactly two roots
    counted with multiplicity, possibly conjugate over a square root.
    """
    lines = (l1, l2, l3, l4)
    for i in range(4):
        for j in range(i + 1, 4):
            if lines[i] == lines[j]:
                raise ValueError("the four lines must be pairwise distinct")
    rows = []
    for line in lines:
        p01, p02, p03, p23, p31, p12 = line.coords
        rows.append((p23, p31, p12, p01, p02, p03))
    kernel = _rational_kernel(rows, 6)
    if len(kernel) != 2:
        return SolutionSet.infinite_family()
    va, vb = kernel
    a = _quadric_on(va)
    b = _polar_on(va, vb)
    c = _quadric_on(vb)
    if a == 0 and b == 0 and c == 0:
        return SolutionSet.infinite_family()

    pairs: list[tuple[PlueckerLine, int]]
    if a == 0 and b == 0:
        pairs = [(PlueckerLine(va), 2)]
    elif a == 0:
        second = [-c * x + b * y for x, y in zip(va, vb)]
        pairs = [(PlueckerLine(va), 1), (PlueckerLine(second), 1)]
    else:
        disc = b * b - 4 * a * c
        if disc == 0:
            coords = [-b * x + 2 * a * y for x, y in zip(va, vb)]
            pairs = [(PlueckerLine(coords), 2)]
        else:
            root = isqrt(disc) if disc > 0 else None
            if root is not None and root * root == disc:
                plus = [(-b + root) * x + 2 * a * y for x, y in zip(va, vb)]
                minus = [(-b - root) * x + 2 * a * y for x, y in zip(va, vb)]
                pairs = [(PlueckerLine(plus), 1), (PlueckerLine(minus), 1)]
            else:
                plus = [QNum(-b * x + 2 * a * y, x, disc) for x, y in zip(va, vb)]
                line = PlueckerLine(plus)
                pairs = [(line, 1), (line.conjugate(), 1)]

    for solution, _ in pairs:
        for line in lines:
            if incidence_form(solution, line) != 0:
                raise AssertionError("solver produced a line missing an input line")
    result = SolutionSet.finite(pairs)
    if result.total_multiplicity != 2:
        raise AssertionError("finite solution sets must have total multiplicity 2")
    return result


class SurfaceForm:
    """Homogeneous form of degree n in x, y, z, w with exact coefficients.

    Coefficients are canonicalized to coprime integers with the first
    monomial (in the internal order) positive; surfaces are projective, so
    scaling is immaterial.
    """

    __slots__ = ("degree", "terms")

    def __init__(self, coeffs: Mapping[tuple[int, int, int, int], Rational]) -> None:
        clean: dict[tuple[int, int, int, int], Fraction] = {}
        for mono, value in coeffs.items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != 4 or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial exponents {mono!r}")
            value = Fraction(value)
            if value:
                clean[mono] = clean.get(mono, Fraction(0)) + value
        clean = {m: c for m, c in clean.items() if c}
        if not clean:
            raise ValueError("a surface form must be nonzero")
        degrees = {sum(m) for m in clean}
        if len(degrees) != 1:
            raise ValueError("a surface form must be homogeneous")
        (degree,) = degrees
        if degree < 1:
            raise ValueError("a surface form must have degree at least 1")
        monos = sorted(clean)
        ints = _canonical_int_vector([clean[m] for m in monos])
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", dict(zip(monos, ints)))

    def __setattr__(self, name, value):
        raise AttributeError("SurfaceForm is immutable")

    def value(self, point: Union[ProjectivePoint, Sequence[Rational]]):
        coords = point.coords if isinstance(point, ProjectivePoint) else point
        coords = [Fraction(x) for x in coords]
        total = Fraction(0)
        for mono, c in self.terms.items():
            term = Fraction(c)
            for x, e in zip(coords, mono):
                term *= x ** e
            total += term
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, SurfaceForm) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self) -> str:
        return f"SurfaceForm({self.terms!r})"


class DegeneratePencil(ValueError):
    """The tangency discriminant degenerated; the configuration is special."""


_SURFACE_RING = PolyRing([("x", 1), ("y", 1), ("z", 1), ("w", 1)])
_PENCIL_RING = PolyRing([("s", 1), ("u", 1), ("lam", 1)])


def _plane_frame(
    plane: Sequence[Rational], vertex: Union[ProjectivePoint, Sequence[Rational]]
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """Integer basis (V, W1, W2) of a plane through the given vertex."""
    dual = [Fraction(x) for x in plane]
    if len(dual) != 4 or not any(dual):
        raise ValueError("a plane needs 4 dual coordinates, not all zero")
    dual = _canonical_int_vector(dual)
    point = vertex if isinstance(vertex, ProjectivePoint) else ProjectivePoint(vertex)
    v = point.coords
    if sum(d * x for d, x in zip(dual, v)) != 0:
        raise ValueError("the vertex must lie on the plane")
    kernel = _rational_kernel([dual], 4)
    for i in range(len(kernel)):
        for j in range(i + 1, len(kernel)):
            rows = [
                [Fraction(x) for x in v],
                [Fraction(x) for x in kernel[i]],
                [Fraction(x) for x in kernel[j]],
            ]
            if len(_rational_kernel(rows, 4)) == 1:
                return v, kernel[i], kernel[j]
    raise ValueError("could not complete the vertex to a basis of the plane")


def _pencil_coefficients(
    f: SurfaceForm,
    v: Sequence[int],
    w1: Sequence[int],
    w2: Sequence[int],
) -> dict[tuple[int, int], int]:
    """Restriction f(s*V + u*(W1 + lam*W2)) as {(s-exponent, lam-exponent): coeff}."""
    s, u, lam = _PENCIL_RING.gens()
    images = {}
    for idx, name in enumerate(("x", "y", "z", "w")):
        images[name] = int(v[idx]) * s + int(w1[idx]) * u + int(w2[idx]) * (u * lam)
    big = substitute(_SURFACE_RING.element(f.terms), _PENCIL_RING, images)
    out: dict[tuple[int, int], int] = {}
    for (es, eu, el), coeff in big.terms.items():
        out[(es, el)] = out.get((es, el), 0) + coeff
    return {k: c for k, c in out.items() if c}


def _bareiss_det(matrix: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    m = [row[:] for row in matrix]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _sylvester_det_at(coeffs: dict[tuple[int, int], int], n: int, lam0: int) -> int:
    """Resultant of the section form and its s-derivative at one lam value."""
    p = [0] * (n + 1)
    for (es, el), c in coeffs.items():
        p[n - es] += c * lam0 ** el
    dp = [(n - i) * p[i] for i in range(n)]
    size = 2 * n - 1
    matrix = []
    for i in range(n - 1):
        matrix.append([0] * i + p + [0] * (size - i - n - 1))
    for i in range(n):
        matrix.append([0] * i + dp + [0] * (size - i - n))
    return _bareiss_det(matrix)


def pencil_discriminant(
    f: SurfaceForm,
    plane: Sequence[Rational],
    vertex: Union[ProjectivePoint, Sequence[Rational]],
) -> tuple[Fraction, ...]:
    """Ascending coefficients of the tangency discriminant of a pencil.

    Lines in the plane through the vertex are parameterized by lam; the
    surface restricts to each line as a binary form in s whose resultant
    with its own derivative detects tangency.  The result is a polynomial
    in lam computed exactly by evaluation and interpolation.
    """
    v, w1, w2 = _plane_frame(plane, vertex)
    n = f.degree
    coeffs = _pencil_coefficients(f, v, w1, w2)
    if not coeffs:
        raise ValueError("the plane section of the surface is identically zero")
    if coeffs.get((n, 0), 0) == 0:
        raise ValueError("the vertex lies on the section curve")
    npts = n * (2 * n - 1) + 1
    xs = list(range(npts))
    ys = [_sylvester_det_at(coeffs, n, x) for x in xs]
    poly = _interpolate(xs, ys)
    while poly and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Lagrange interpolation over the rationals; ascending coefficients."""
    result = [Fraction(0)] * len(xs)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        numer = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            shifted = [Fraction(0)] + numer
            numer = [s - xj * c for s, c in zip(shifted, numer + [Fraction(0)])]
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for k, c in enumerate(numer):
            result[k] += scale * c
    return result


def pencil_tangency_count(
    f: SurfaceForm,
    plane: Sequence[Rational],
    vertex: Union[ProjectivePoint, Sequence[Rational]],
) -> int:
    """Tangent lines to the plane section among lines through the vertex.

    Counts complex roots of the tangency discriminant with multiplicity,
    which is its degree n(n-1) once the leading coefficient is checked
    nonzero; a dropped degree raises DegeneratePencil instead of returning
    a short count.
    """
    expected = f.degree * (f.degree - 1)
    disc = pencil_discriminant(f, plane, vertex)
    if len(disc) - 1 != expected:
        raise DegeneratePencil(
            f"discriminant degree {len(disc) - 1} instead of {expected}; "
            "the pencil is not generic"
        )
    return expected


def random_projective_point(rng: random.Random, bound: int = 10) -> ProjectivePoint:
    while True:
        coords = [rng.randint(-bound, bound) for _ in range(4)]
        if any(coords):
            return ProjectivePoint(coords)


def random_line(rng: random.Random, bound: int = 10) -> PlueckerLine:
    while True:
        p = random_projective_point(rng, bound)
        q = random_projective_point(rng, bound)
        if p != q:
            return plucker_from_points(p, q)


def random_four_lines(rng: random.Random, bound: int = 10) -> tuple[PlueckerLine, ...]:
    while True:
        lines = tuple(random_line(rng, bound) for _ in range(4))
        if len(set(lines)) == 4:
            return lines


def random_surface_form(rng: random.Random, degree: int, bound: int = 10) -> SurfaceForm:
    monos = _SURFACE_RING.monomials_of_degree(degree)
    while True:
        coeffs = {m: rng.randint(-bound, bound) for m in monos}
        if any(coeffs.values()):
            return SurfaceForm(coeffs)


def random_pencil_instance(
    rng: random.Random, degree: int
) -> tuple[SurfaceForm, tuple[int, ...], ProjectivePoint]:
    """Surface, plane and on-plane vertex with the preconditions satisfied."""
    while True:
        plane = [rng.randint(-5, 5) for _ in range(4)]
        if not any(plane):
            continue
        basis = _rational_kernel([_canonical_int_vector([Fraction(x) for x in plane])], 4)
        weights = [rng.randint(-3, 3) for _ in basis]
        coords = [sum(w * b[i] for w, b in zip(weights, basis)) for i in range(4)]
        if not any(coords):
            continue
        vertex = ProjectivePoint(coords)
        f = random_surface_form(rng, degree)
        if f.value(vertex) == 0:
            continue
        return f, tuple(plane), vertex
