"""First-order tangent data for lines (and small planes) inside a hypersurface.

For a line E = span(e1, e2) contained in X = Z(P) the first-order
deformations of E inside X form the kernel of a linear map

    sigma : E^* (x) W/E  ->  S^d E^*,   alpha (x) w  |->  alpha . (w -| P)|_E,

where (w -| P) is the directional derivative of P along w and |_E is the
restriction to the line.  sigma is assembled as an exact matrix whose rows
are indexed by alpha^i (x) w_j (all alpha^1 rows first, complement index
ascending) and whose columns are the coefficients of s^d, s^(d-1) t, ..., t^d.

Pi <= W/E is the subspace of directions w with (w -| P)|_E = 0: deformations
that move the line trivially to first order in every pencil direction.
Quotienting the kernel by E^* (x) Pi leaves a pencil of 2 x m matrices, fed
to the normal-form machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .forms import BinaryForm, MultiForm, contract, restrict_to_plane
from .linalg import Field, Subspace, invert, kernel, rank, rref


class PlaneNotContained(ValueError):
    """The given linear space does not lie on the hypersurface."""


@dataclass(frozen=True)
class Hypersurface:
    """Projective hypersurface Z(P) in P^n, P a nonzero form of degree >= 1."""

    P: MultiForm

    def __post_init__(self):
        if self.P.is_zero():
            raise ValueError("defining form must be nonzero")
        if self.P.degree < 1:
            raise ValueError("defining form must have degree >= 1")
        if self.P.nvars < 2:
            raise ValueError("need an ambient projective space of dimension >= 1")

    @property
    def n(self) -> int:
        return self.P.nvars - 1

    @property
    def d(self) -> int:
        return self.P.degree

    @property
    def field(self) -> Field:
        return self.P.field


class LineFrame:
    """A line span(e1, e2) with a chosen complement basis of W/E.

    The complement defaults to the standard basis vectors at the non-pivot
    columns of the echelon form of (e1, e2); any basis of a complement may be
    supplied instead.  (alpha^1, alpha^2) is the dual basis of (e1, e2): a
    restricted form in (s, t) is expressed in exactly these coordinates.
    """

    __slots__ = ("field", "e1", "e2", "complement", "_inv_cols")

    def __init__(self, field: Field, e1, e2, complement=None):
        self.field = field
        self.e1 = field.vector(e1)
        self.e2 = field.vector(e2)
        n1 = len(self.e1)
        if len(self.e2) != n1:
            raise ValueError("spanning vectors have different lengths")
        red, pivots = rref([self.e1, self.e2], field)
        if len(red) != 2:
            raise ValueError("line frame needs two independent spanning vectors")
        if complement is None:
            one, zero = field.one(), field.zero()
            complement = [tuple(one if j == c else zero for j in range(n1))
                          for c in range(n1) if c not in pivots]
        self.complement = tuple(field.vector(w) for w in complement)
        if len(self.complement) != n1 - 2:
            raise ValueError("complement must have %d vectors" % (n1 - 2))
        basis = [self.e1, self.e2, *self.complement]
        # columns of the change-of-basis matrix are the basis vectors
        cols = [[basis[j][i] for j in range(n1)] for i in range(n1)]
        try:
            self._inv_cols = invert(cols, field)
        except ValueError:
            raise ValueError("complement does not complete the line to a basis")

    @property
    def ambient_dim(self) -> int:
        return len(self.e1)

    @property
    def n(self) -> int:
        return self.ambient_dim - 1

    def coords(self, v):
        """Coordinates (a, b, c_1..c_{n-1}) of v in the frame basis."""
        v = self.field.vector(v)
        if len(v) != self.ambient_dim:
            raise ValueError("vector length mismatch")
        return tuple(sum((row[i] * v[i] for i in range(self.ambient_dim)),
                         self.field.zero())
                     for row in self._inv_cols)

    def quotient_coords(self, v):
        """Image of v in W/E, in the complement coordinates."""
        return self.coords(v)[2:]

    def line_coords(self, x):
        """(a, b) with x = a e1 + b e2, or None if x is off the line."""
        c = self.coords(x)
        if any(c[2:]):
            return None
        return c[0], c[1]

    def point(self, a, b):
        a, b = self.field.scalar(a), self.field.scalar(b)
        return tuple(a * u + b * v for u, v in zip(self.e1, self.e2))

    def lift_from_complement(self, coeffs):
        """The W-vector with given complement coordinates."""
        out = [self.field.zero()] * self.ambient_dim
        for c, w in zip(coeffs, self.complement):
            if c:
                out = [o + c * wi for o, wi in zip(out, w)]
        return tuple(out)

    def canonical_rows(self):
        """Echelon representative of the line in the Grassmannian."""
        red, _ = rref([self.e1, self.e2], self.field)
        return tuple(red)

    def _key(self):
        return (self.field, self.e1, self.e2, self.complement)

    def __eq__(self, other):
        if not isinstance(other, LineFrame):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "LineFrame(e1=%r, e2=%r)" % (self.e1, self.e2)


@dataclass(frozen=True)
class TangentReport:
    """Bundle of the first-order data of a line inside a hypersurface."""

    sigma_matrix: tuple
    kernel: Subspace       # in E^* (x) W/E coordinates, dim 2(n-1)
    pi: Subspace           # in W/E complement coordinates, dim n-1
    m: int                 # dim (W/E)/Pi
    pencil: Subspace       # kernel/(E^* (x) Pi) inside K^2 (x) K^m
    tangent_dim: int


def _require_on_surface(X: Hypersurface, frame: LineFrame):
    if X.field != frame.field:
        raise ValueError("field mismatch between hypersurface and frame")
    if not restrict_to_plane(X.P, [frame.e1, frame.e2]).is_zero():
        raise PlaneNotContained("plane not contained in hypersurface")


def restricted_contractions(X: Hypersurface, frame: LineFrame):
    """(w_j -| P)|_E for each complement vector, as degree d-1 binary forms."""
    _require_on_surface(X, frame)
    return [restrict_to_plane(contract(w, X.P), [frame.e1, frame.e2])
            for w in frame.complement]


def _mul_s(f: BinaryForm) -> tuple:
    return f.coeffs + (f.field.zero(),)


def _mul_t(f: BinaryForm) -> tuple:
    return (f.field.zero(),) + f.coeffs


def sigma(X: Hypersurface, frame: LineFrame):
    """Matrix of the first-order deformation map of the line.

    Rows: alpha^1 (x) w_1 .. alpha^1 (x) w_{n-1}, then the alpha^2 row block.
    Columns: coefficients of s^d, s^{d-1} t, ..., t^d.
    """
    fs = restricted_contractions(X, frame)
    return tuple([*(_mul_s(f) for f in fs), *(_mul_t(f) for f in fs)])


def tangent_space(X: Hypersurface, frame: LineFrame) -> Subspace:
    """Kernel of sigma: first-order deformations of the line inside X."""
    mat = sigma(X, frame)
    cols = [[row[i] for row in mat] for i in range(X.d + 1)]
    return kernel(cols, X.field, ncols=len(mat))


def compute_pi(X: Hypersurface, frame: LineFrame) -> Subspace:
    """Directions w in W/E with (w -| P)|_E identically zero.

    This is the largest subspace Pi with E^* (x) Pi inside ker sigma.
    """
    fs = restricted_contractions(X, frame)
    cols = [[f.coeffs[i] for f in fs] for i in range(X.d)]
    return kernel(cols, X.field, ncols=len(fs))


def quotient_project(v, pi: Subspace):
    """Coordinates of v + Pi in the canonical complement of Pi."""
    reduced = pi._reduce(v)
    pivots = set(pi.pivot_columns())
    return tuple(reduced[i] for i in range(pi.ambient_dim) if i not in pivots)


def quotient_section(c, pi: Subspace):
    """Canonical preimage in W/E coordinates of a quotient vector."""
    free = [i for i in range(pi.ambient_dim) if i not in set(pi.pivot_columns())]
    if len(c) != len(free):
        raise ValueError("quotient vector has wrong length")
    out = [pi.field.zero()] * pi.ambient_dim
    for i, ci in zip(free, c):
        out[i] = ci
    return tuple(out)


def pencil_quotient(X: Hypersurface, frame: LineFrame,
                    tangent: Subspace | None = None,
                    pi: Subspace | None = None) -> Subspace:
    """Image of ker sigma in K^2 (x) (W/E)/Pi, flattened to length 2m vectors.

    Coordinates: the alpha^1 block of quotient coordinates, then the alpha^2
    block.  E^* (x) Pi maps to zero, so the result has dimension
    dim ker sigma - 2 dim Pi whenever the kernel contains E^* (x) Pi.
    """
    if tangent is None:
        tangent = tangent_space(X, frame)
    if pi is None:
        pi = compute_pi(X, frame)
    nm1 = X.n - 1
    m = nm1 - pi.dim
    vecs = []
    for v in tangent.basis:
        a, b = v[:nm1], v[nm1:]
        vecs.append(quotient_project(a, pi) + quotient_project(b, pi))
    if not vecs:
        return Subspace.zero(X.field, 2 * m)
    return Subspace.from_vectors(vecs, X.field, 2 * m)


def analyze_tangent(X: Hypersurface, frame: LineFrame) -> TangentReport:
    mat = sigma(X, frame)
    tang = tangent_space(X, frame)
    pi = compute_pi(X, frame)
    pencil = pencil_quotient(X, frame, tang, pi)
    return TangentReport(sigma_matrix=mat, kernel=tang, pi=pi,
                         m=(X.n - 1) - pi.dim, pencil=pencil,
                         tangent_dim=tang.dim)


def tangent_cone_lines(X: Hypersurface, frame: LineFrame, x,
                       pi: Subspace | None = None) -> Subspace:
    """Deformations fixing the point x on the line: hat(x)-annihilator (x) Pi.

    x is an ambient point on the line.  The result lives in the same
    coordinates as tangent_space and has dimension dim Pi.
    """
    ab = frame.line_coords(x)
    if ab is None:
        raise ValueError("point is not on the line")
    a, b = ab
    if not a and not b:
        raise ValueError("zero vector does not define a projective point")
    if pi is None:
        pi = compute_pi(X, frame)
    nm1 = X.n - 1
    vecs = []
    for p in pi.basis:
        vecs.append(tuple(b * c for c in p) + tuple(-a * c for c in p))
    if not vecs:
        return Subspace.zero(X.field, 2 * nm1)
    return Subspace.from_vectors(vecs, X.field, 2 * nm1)


# ---------------------------------------------------------------------------
# small-dimensional planes (k <= 3): the same first-order map


def _monomials(nv: int, d: int):
    """Exponent tuples of degree d in nv variables, descending lexicographic."""
    out = []
    for combo in combinations_with_replacement(range(nv), d):
        e = [0] * nv
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def sigma_plane(X: Hypersurface, basis):
    """Deformation matrix for a k-plane on X, k = len(basis)-1 <= 3.

    Rows are indexed by y_i (x) w_j (dual-coordinate blocks, complement index
    ascending inside each block); columns by the degree-d monomials in the
    plane's dual coordinates, descending lexicographic.  Returns
    (matrix, monomial_order).
    """
    field = X.field
    k = len(basis) - 1
    if not 1 <= k <= 3:
        raise ValueError("plane dimension capped at k <= 3")
    basis = [field.vector(v) for v in basis]
    if rank(basis, field) != k + 1:
        raise ValueError("plane basis is linearly dependent")
    if not restrict_to_plane(X.P, basis).is_zero():
        raise PlaneNotContained("plane not contained in hypersurface")
    n1 = X.n + 1
    red, pivots = rref(basis, field)
    one, zero = field.one(), field.zero()
    complement = [tuple(one if j == c else zero for j in range(n1))
                  for c in range(n1) if c not in pivots]
    monos = _monomials(k + 1, X.d)
    index = {e: i for i, e in enumerate(monos)}
    rows = []
    restricted = []
    for w in complement:
        f = restrict_to_plane(contract(w, X.P), basis)
        if isinstance(f, BinaryForm):
            deg = f.degree
            restricted.append({(deg - i, i): c
                               for i, c in enumerate(f.coeffs) if c})
        else:
            restricted.append(f.terms)
    for i in range(k + 1):
        for terms in restricted:
            row = [zero] * len(monos)
            for e, c in terms.items():
                shifted = e[:i] + (e[i] + 1,) + e[i + 1:]
                row[index[shifted]] = c
            rows.append(tuple(row))
    return tuple(rows), tuple(monos)


def tangent_space_plane(X: Hypersurface, basis) -> Subspace:
    """Kernel of the k-plane deformation matrix."""
    mat, monos = sigma_plane(X, basis)
    cols = [[row[i] for row in mat] for i in range(len(monos))]
    return kernel(cols, X.field, ncols=len(mat))
