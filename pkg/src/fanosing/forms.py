"""Homogeneous forms with exact coefficients.

MultiForm is a sparse homogeneous polynomial in n+1 ambient variables;
BinaryForm is a dense homogeneous form on a line, written in the dual
coordinates (s, t) of a chosen basis of the line.

Contraction convention: contract(v, P) is the directional derivative D_v P,
*not* divided by the degree.  All identities downstream (restricted
contractions, chain relations, extracted generators) use this normalization.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Field, FieldMismatch, Fp, QQ, parse_field, rank


class NotDivisible(ValueError):
    """Exact division failed; .remainder carries the obstruction."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class CharacteristicTooSmall(ValueError):
    """Polarization denominators vanish: characteristic <= degree."""


class MultiForm:
    """Sparse homogeneous form: exponent tuple -> nonzero coefficient.

    Immutable by convention; arithmetic returns new instances.  The zero
    form still carries a definite degree and variable count.
    """

    __slots__ = ("field", "nvars", "degree", "terms")

    def __init__(self, field: Field, nvars: int, degree: int, terms=None):
        if nvars < 1:
            raise ValueError("need at least one variable")
        if degree < 0:
            raise ValueError("degree must be >= 0")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError("bad exponent tuple %r" % (exps,))
            if sum(exps) != degree:
                raise ValueError("term %r is not of degree %d" % (exps, degree))
            c = field.scalar(c)
            if c:
                clean[exps] = clean[exps] + c if exps in clean else c
                if not clean[exps]:
                    del clean[exps]
        self.field = field
        self.nvars = nvars
        self.degree = degree
        self.terms = clean

    @classmethod
    def zero(cls, field: Field, nvars: int, degree: int):
        return cls(field, nvars, degree, {})

    @classmethod
    def monomial(cls, field: Field, nvars: int, exps, coeff=1):
        return cls(field, nvars, sum(exps), {tuple(exps): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "MultiForm", same_degree=True):
        if self.field != other.field:
            raise FieldMismatch("field mismatch: %s vs %s" % (self.field, other.field))
        if self.nvars != other.nvars:
            raise ValueError("variable counts differ")
        if same_degree and self.degree != other.degree:
            raise ValueError("degrees differ: %d vs %d" % (self.degree, other.degree))

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, self.field.zero()) + c
        return MultiForm(self.field, self.nvars, self.degree, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return MultiForm(self.field, self.nvars, self.degree,
                         {e: -c for e, c in self.terms.items()})

    def scale(self, c):
        c = self.field.scalar(c)
        return MultiForm(self.field, self.nvars, self.degree,
                         {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiForm):
            return self.scale(other)
        self._check(other, same_degree=False)
        terms = {}
        zero = self.field.zero()
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, zero) + c1 * c2
        return MultiForm(self.field, self.nvars, self.degree + other.degree, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiForm(self.field, self.nvars, 0, {(0,) * self.nvars: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiForm):
            return NotImplemented
        return (self.field == other.field and self.nvars == other.nvars
                and self.degree == other.degree and self.terms == other.terms)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def partial(self, i: int) -> "MultiForm":
        """Partial derivative with respect to variable i (degree drops by 1)."""
        if self.degree == 0:
            raise ValueError("cannot differentiate a degree-0 form")
        terms = {}
        zero = self.field.zero()
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = e[:i] + (e[i] - 1,) + e[i + 1:]
            terms[ne] = terms.get(ne, zero) + c * e[i]
        return MultiForm(self.field, self.nvars, self.degree - 1, terms)

    def evaluate(self, point):
        point = self.field.vector(point)
        if len(point) != self.nvars:
            raise ValueError("point has %d coordinates, form has %d variables"
                             % (len(point), self.nvars))
        total = self.field.zero()
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            total = total + v
        return total

    def reduce_mod(self, p: int) -> "MultiForm":
        """Reduce a rational form modulo a prime (denominators must be units)."""
        if not self.field.is_rational:
            raise ValueError("reduce_mod applies to rational forms")
        fp = Field(p)
        return MultiForm(fp, self.nvars, self.degree,
                         {e: fp.scalar(c) for e, c in self.terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def __repr__(self):
        if self.is_zero():
            return "MultiForm(0; deg %d, %d vars, %s)" % (self.degree, self.nvars, self.field)
        bits = []
        for e, c in self.sorted_terms():
            mono = "*".join("x%d^%d" % (i, k) if k > 1 else "x%d" % i
                            for i, k in enumerate(e) if k)
            bits.append("%s*%s" % (c, mono) if mono else str(c))
        return " + ".join(bits)


class BinaryForm:
    """Dense homogeneous form on a line: coeffs[i] multiplies s^(d-i) t^i."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        coeffs = tuple(field.scalar(c) for c in coeffs)
        if not coeffs:
            raise ValueError("empty coefficient list")
        self.field = field
        self.coeffs = coeffs

    @classmethod
    def zero(cls, field: Field, degree: int):
        return cls(field, (0,) * (degree + 1))

    @classmethod
    def monomial(cls, field: Field, degree: int, i: int, coeff=1):
        """coeff * s^(degree-i) t^i."""
        c = [0] * (degree + 1)
        c[i] = coeff
        return cls(field, c)

    @classmethod
    def linear(cls, field: Field, a, b):
        """a*s + b*t."""
        return cls(field, (a, b))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: "BinaryForm", same_degree=True):
        if self.field != other.field:
            raise FieldMismatch("field mismatch: %s vs %s" % (self.field, other.field))
        if same_degree and self.degree != other.degree:
            raise ValueError("degrees differ: %d vs %d" % (self.degree, other.degree))

    def __add__(self, other):
        self._check(other)
        return BinaryForm(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return BinaryForm(self.field, tuple(-c for c in self.coeffs))

    def scale(self, c):
        c = self.field.scalar(c)
        return BinaryForm(self.field, tuple(c * v for v in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, BinaryForm):
            return self.scale(other)
        self._check(other, same_degree=False)
        d = self.degree + other.degree
        zero = self.field.zero()
        out = [zero] * (d + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return BinaryForm(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = BinaryForm(self.field, (self.field.one(),))
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return (self.field == other.field and self.coeffs == other.coeffs)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def evaluate(self, a, b):
        a, b = self.field.scalar(a), self.field.scalar(b)
        d = self.degree
        total = self.field.zero()
        for i, c in enumerate(self.coeffs):
            if c:
                total = total + c * a**(d - i) * b**i
        return total

    def derivative_s(self):
        d = self.degree
        if d == 0:
            raise ValueError("cannot differentiate a degree-0 form")
        return BinaryForm(self.field, tuple(self.coeffs[i] * (d - i) for i in range(d)))

    def monic(self):
        """Scale so the earliest nonzero coefficient is 1."""
        for c in self.coeffs:
            if c:
                return self.scale(self.field.one() / c)
        raise ValueError("cannot normalize the zero form")

    def t_multiplicity(self) -> int:
        """Largest k with t^k dividing the form (order of vanishing at [1:0])."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("zero form")

    def s_multiplicity(self) -> int:
        for i in range(self.degree, -1, -1):
            if self.coeffs[i]:
                return self.degree - i
        raise ValueError("zero form")

    def __repr__(self):
        if self.is_zero():
            return "BinaryForm(0; deg %d, %s)" % (self.degree, self.field)
        d = self.degree
        bits = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = []
            if d - i:
                mono.append("s^%d" % (d - i) if d - i > 1 else "s")
            if i:
                mono.append("t^%d" % i if i > 1 else "t")
            bits.append("%s*%s" % (c, "*".join(mono)) if mono else str(c))
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# contraction / restriction / polarization


def contract(v, P: MultiForm) -> MultiForm:
    """Directional derivative D_v P (degree drops by one, no 1/d factor)."""
    if P.degree < 1:
        raise ValueError("contraction needs degree >= 1")
    v = P.field.vector(v)
    if len(v) != P.nvars:
        raise ValueError("vector length does not match variable count")
    out = MultiForm.zero(P.field, P.nvars, P.degree - 1)
    for i, vi in enumerate(v):
        if vi:
            out = out + P.partial(i).scale(vi)
    return out


def _substitute(P: MultiForm, vectors):
    """P evaluated on sum_k y_k * vectors[k], as a form in the y's.

    No independence requirement; exact substitution and expansion.
    """
    field = P.field
    r = len(vectors)
    vectors = [field.vector(v) for v in vectors]
    for v in vectors:
        if len(v) != P.nvars:
            raise ValueError("vector length does not match variable count")
    # linear form in the y's for each ambient variable
    lin = []
    for i in range(P.nvars):
        lin.append(MultiForm(field, r, 1,
                             {tuple(1 if k == j else 0 for k in range(r)): vectors[j][i]
                              for j in range(r) if vectors[j][i]}))
    max_exp = [0] * P.nvars
    for e in P.terms:
        for i, k in enumerate(e):
            max_exp[i] = max(max_exp[i], k)
    powers = []
    for i in range(P.nvars):
        pw = [MultiForm(field, r, 0, {(0,) * r: 1})]
        for _ in range(max_exp[i]):
            pw.append(pw[-1] * lin[i])
        powers.append(pw)
    out = MultiForm.zero(field, r, P.degree)
    for e, c in P.terms.items():
        term = MultiForm(field, r, 0, {(0,) * r: c})
        for i, k in enumerate(e):
            if k:
                term = term * powers[i][k]
        out = out + term
    return out

def restrict_to_plane(P: MultiForm, basis):
    """Restriction of P to the span of basis, in the dual coordinates of basis.

    basis must be linearly independent.  For a 2-dimensional span (a line)
    the result is a BinaryForm in (s, t); otherwise a MultiForm in k+1
    variables.
    """
    basis = [P.field.vector(v) for v in basis]
    if rank(basis, P.field) != len(basis):
        raise ValueError("basis of the plane is linearly dependent")
    Q = _substitute(P, basis)
    if len(basis) != 2:
        return Q
    coeffs = [P.field.zero()] * (P.degree + 1)
    for e, c in Q.terms.items():
        coeffs[e[1]] = c
    return BinaryForm(P.field, coeffs)


def multilinear_eval(P: MultiForm, args):
    """Full polarization of P evaluated on vectors with multiplicities.

    args is a sequence of (vector, multiplicity) with multiplicities summing
    to deg P.  Needs characteristic 0 or p > deg P; the multinomial
    denominators are units exactly in that case.
    """
    d = P.degree
    mults = [int(m) for _, m in args]
    if any(m < 0 for m in mults) or sum(mults) != d:
        raise ValueError("multiplicities must be nonnegative and sum to the degree")
    if not P.field.is_rational and P.field.p <= d:
        raise CharacteristicTooSmall(
            "characteristic <= degree: polarization needs char 0 or p > %d" % d)
    Q = _substitute(P, [v for v, _ in args])
    c = Q.terms.get(tuple(mults), P.field.zero())
    multinom = math.factorial(d)
    for m in mults:
        multinom //= math.factorial(m)
    return c / P.field.scalar(multinom)


# ---------------------------------------------------------------------------
# binary form division, gcd, roots


def _binary_divmod(f: BinaryForm, g: BinaryForm):
    """(q, r) with f = q*g + r in the chart s=1, re-homogenized; q may be None
    when no homogeneous quotient of degree deg f - deg g exists."""
    f._check(g, same_degree=False)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero form")
    field = f.field
    df, dg = f.degree, g.degree
    if f.is_zero():
        if df < dg:
            return None, f
        return BinaryForm.zero(field, df - dg), BinaryForm.zero(field, df)
    if df < dg:
        return None, f
    # univariate copies in t (index = power of t)
    uf = list(f.coeffs)
    ug = list(g.coeffs)
    while ug and not ug[-1]:
        ug.pop()
    uq = [field.zero()] * (len(uf) - len(ug) + 1)
    lead = ug[-1]
    rem = list(uf)
    for i in range(len(rem) - len(ug), -1, -1):
        c = rem[i + len(ug) - 1] / lead
        if c:
            uq[i] = c
            for j, gc in enumerate(ug):
                rem[i + j] = rem[i + j] - c * gc
    # t-degree of the quotient may not exceed df - dg (s-power obstruction)
    if any(uq[df - dg + 1:]):
        return None, f
    q = BinaryForm(field, uq[:df - dg + 1])
    r = BinaryForm(field, rem[:df + 1] + [field.zero()] * (df + 1 - len(rem)))
    return q, r


def binary_divide(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Exact quotient f/g of binary forms; NotDivisible carries the remainder."""
    q, r = _binary_divmod(f, g)
    if q is None or not r.is_zero():
        raise NotDivisible("binary form is not divisible", remainder=r)
    return q


def binary_gcd(forms) -> BinaryForm:
    """Monic gcd of a collection of binary forms over the same field.

    Zero forms are ignored; the gcd of an all-zero (or empty) collection is
    undefined and raises.  'Monic' means the earliest nonzero coefficient
    is 1.
    """
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        raise ValueError("gcd needs at least one nonzero form")
    field = forms[0].field
    for f in forms[1:]:
        f._check(forms[0], same_degree=False)

    def pair_gcd(a: BinaryForm, b: BinaryForm) -> BinaryForm:
        sm = min(a.s_multiplicity(), b.s_multiplicity())
        ua = list(a.coeffs)
        ub = list(b.coeffs)
        while ua and not ua[-1]:
            ua.pop()
        while ub and not ub[-1]:
            ub.pop()
        while ub:
            if len(ua) < len(ub):
                ua, ub = ub, ua
                continue
            lead = ub[-1]
            shift = len(ua) - len(ub)
            c = ua[-1] / lead
            for j in range(len(ub)):
                ua[shift + j] = ua[shift + j] - c * ub[j]
            ua.pop()
            while ua and not ua[-1]:
                ua.pop()
            if len(ua) < len(ub):
                ua, ub = ub, ua
        # ua now generates; homogenize to degree sm + deg(ua)
        d = sm + len(ua) - 1
        out = list(ua) + [field.zero()] * (d + 1 - len(ua))
        return BinaryForm(field, out).monic()

    g = forms[0]
    for f in forms[1:]:
        g = pair_gcd(g, f)
        if g.degree == 0:
            break
    return g.monic()


@dataclass(frozen=True)
class RootReport:
    """Projective roots of a binary form over the ground field.

    roots: ((x, y), multiplicity) pairs, (x, y) in canonical coordinates
    (first nonzero coordinate 1 over Fp; primitive integers with positive
    leading coordinate over Q).  unsolved: factors of degree >= 2 without
    rational roots, with multiplicities; their roots live in an extension.
    """

    roots: tuple
    unsolved: tuple


def projective_normalize(vec, field: Field):
    """Canonical coordinates of a projective point."""
    vec = list(field.vector(vec))
    if not any(vec):
        raise ValueError("zero vector does not define a projective point")
    if not field.is_rational:
        lead = next(x for x in vec if x)
        inv = field.one() / lead
        return tuple(inv * x for x in vec)
    den = math.lcm(*(x.denominator for x in vec))
    ints = [x.numerator * (den // x.denominator) for x in vec]
    g = math.gcd(*(abs(i) for i in ints))
    ints = [i // g for i in ints]
    lead = next(i for i in ints if i)
    if lead < 0:
        ints = [-i for i in ints]
    return tuple(Fraction(i) for i in ints)


def _divisors_signed(n: int):
    n = abs(n)
    small, big = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                big.append(n // i)
        i += 1
    out = small + big[::-1]
    return [d for v in out for d in (v, -v)]


def _int_poly(coeffs):
    """Clear denominators and content from Fraction coefficients."""
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = math.gcd(*(abs(i) for i in ints)) or 1
    ints = [i // g for i in ints]
    if ints[-1] < 0:
        ints = [-i for i in ints]
    return ints


def _poly_eval_int(coeffs, x: Fraction):
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * x + c
    return total


def _poly_divmod_q(a, b):
    """Univariate division over Q on coefficient lists (index = power)."""
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    while b and not b[-1]:
        b.pop()
    if not b:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and any(a):
        while a and not a[-1]:
            a.pop()
        if len(a) < len(b):
            break
        c = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = c
        for j in range(len(b)):
            a[shift + j] -= c * b[j]
        a.pop()
    return q, a


def _kronecker_irreducible_factors(w):
    """Irreducible factors (each of degree >= 2) of a primitive squarefree
    integer polynomial with no rational roots, by divisor interpolation on
    small integer nodes.  Desk-scale only; guarded by a combinatorial budget.
    """
    n = len(w) - 1
    if n <= 3:
        return [list(w)]  # no rational roots and degree <= 3: irreducible
    for e in range(2, n // 2 + 1):
        nodes = [0]
        k = 1
        while len(nodes) < e + 1:
            nodes += [k, -k]
            k += 1
        nodes = nodes[:e + 1]
        vals = [int(_poly_eval_int(w, Fraction(x))) for x in nodes]
        div_lists = [_divisors_signed(v) for v in vals]
        total = 1
        for dl in div_lists:
            total *= len(dl)
            if total > 200000:
                raise ValueError("factorization budget exceeded")
        for choice in itertools.product(*div_lists):
            # Lagrange interpolation of a factor candidate through the nodes
            cand = [Fraction(0)] * (e + 1)
            for xi, yi in zip(nodes, choice):
                li = [Fraction(1)]
                denom = Fraction(1)
                for xj in nodes:
                    if xj == xi:
                        continue
                    li = _poly_mul_q(li, [Fraction(-xj), Fraction(1)])
                    denom *= Fraction(xi - xj)
                scale = Fraction(yi) / denom
                for k2 in range(len(li)):
                    cand[k2] += scale * li[k2]
            if not cand[e] or any(c.denominator != 1 for c in cand):
                continue
            q, r = _poly_divmod_q(w, cand)
            if any(r):
                continue
            part = _int_poly(cand)
            rest = _int_poly(q)
            return (_kronecker_irreducible_factors(part)
                    + _kronecker_irreducible_factors(rest))
    return [list(w)]


def _poly_mul_q(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _binary_from_tpoly(field, coeffs, degree):
    """Homogenize a chart-s=1 polynomial (index = power of t) to a degree."""
    out = [field.zero()] * (degree + 1)
    for i, c in enumerate(coeffs):
        out[i] = field.scalar(c)
    return BinaryForm(field, out)


def binary_roots(f: BinaryForm) -> RootReport:
    """Roots of a nonzero binary form over its field of definition.

    Over Fp: exhaustive scan of the p+1 points of the projective line,
    multiplicities by repeated exact division.  Over Q: rational roots by
    the integer root test, remaining factors split into irreducibles (desk
    scale) and reported unsolved.
    """
    if f.is_zero():
        raise ValueError("roots of the zero form are everything")
    field = f.field
    roots = []
    cofactor = f

    def peel(point):
        nonlocal cofactor
        x, y = point
        ell = BinaryForm.linear(field, y, -x)
        mult = 0
        while cofactor.degree >= 1:
            q, r = _binary_divmod(cofactor, ell)
            if q is None or not r.is_zero():
                break
            cofactor = q
            mult += 1
        return mult

    if not field.is_rational:
        p = field.p
        pts = [(field.one(), field.scalar(a)) for a in range(p)] + [(field.zero(), field.one())]
        for pt in pts:
            if not f.evaluate(*pt):
                m = peel(pt)
                roots.append((projective_normalize(pt, field), m))
        unsolved = ()
        if cofactor.degree >= 2:
            unsolved = tuple(_factor_nonsplit_fp(cofactor))
        return RootReport(tuple(roots), unsolved)

    # field Q
    tm = f.t_multiplicity()
    if tm:
        m = peel((field.one(), field.zero()))
        assert m == tm
        roots.append((projective_normalize((1, 0), field), m))
    sm = cofactor.s_multiplicity() if not cofactor.is_zero() else 0
    if cofactor.degree >= 1 and sm:
        m = peel((field.zero(), field.one()))
        roots.append((projective_normalize((0, 1), field), m))
    if cofactor.degree >= 1:
        # chart s=1: polynomial in t with nonzero constant and leading coeff
        ints = _int_poly(list(cofactor.coeffs))
        for num in _divisors_signed(ints[0]):
            for den in _divisors_signed(ints[-1]):
                if den <= 0:
                    continue
                a = Fraction(num, den)
                if _poly_eval_int(ints, a) == 0:
                    pt = (field.one(), field.scalar(a))
                    if not cofactor.evaluate(*pt):
                        m = peel(pt)
                        if m:
                            roots.append((projective_normalize(pt, field), m))
    unsolved = []
    if cofactor.degree >= 2:
        ints = _int_poly(list(cofactor.coeffs))
        der = [c * i for i, c in enumerate(ints)][1:]
        gq, _ = _poly_divmod_q(ints, _poly_gcd_q(ints, der)) if any(der) else (ints, [])
        sqfree = _int_poly([Fraction(c) for c in gq])
        for fac in _kronecker_irreducible_factors(sqfree):
            bf = _binary_from_tpoly(field, fac, len(fac) - 1)
            mult = 0
            while True:
                q, r = _binary_divmod(cofactor, bf)
                if q is None or not r.is_zero():
                    break
                cofactor = q
                mult += 1
            if mult:
                unsolved.append((_primitive_binary(bf), mult))
    roots.sort(key=lambda rm: tuple(_sort_key(c) for c in rm[0]))
    return RootReport(tuple(roots), tuple(unsolved))


def _sort_key(c):
    return (c.v if isinstance(c, Fp) else (c.numerator, c.denominator))


def _poly_gcd_q(a, b):
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    while any(b):
        _, r = _poly_divmod_q(a, b)
        a, b = b, r
        while b and not b[-1]:
            b.pop()
    return a


def _primitive_binary(f: BinaryForm) -> BinaryForm:
    """Integer-primitive normalization with positive earliest coefficient."""
    ints = _int_poly([Fraction(c) for c in f.coeffs])
    lead = next(i for i in ints if i)
    if lead < 0:
        ints = [-i for i in ints]
    return BinaryForm(f.field, ints)


def _factor_nonsplit_fp(f: BinaryForm):
    """Factor a rootless cofactor over a small prime field by trial division;
    for large p the cofactor is reported whole."""
    field = f.field
    p = field.p
    out = []
    if p > 64 or f.degree < 4:
        return [(f.monic(), 1)]
    rest = f.monic()
    for e in range(2, f.degree // 2 + 1):
        for tail in itertools.product(range(p), repeat=e):
            cand = _binary_from_tpoly(field, list(tail) + [1], e)
            if cand.t_multiplicity() != 0:
                continue
            mult = 0
            while rest.degree >= e:
                q, r = _binary_divmod(rest, cand)
                if q is None or not r.is_zero():
                    break
                rest = q.monic() if not q.is_zero() else q
                mult += 1
            if mult:
                out.append((cand.monic(), mult))
        if rest.degree < 4:
            break
    if rest.degree >= 2:
        out.append((rest.monic(), 1))
    return out


# ---------------------------------------------------------------------------
# text format


def parse_form(text: str) -> MultiForm:
    """Parse the exchange format:

        field Q            (or: field Fp 7, field Fp:7)
        vars 4
        1 3 0 0 0          (coefficient, then one exponent per variable)
        -1/2 0 1 1 1

    Lines may appear in any order after the two headers; repeated monomials
    are summed.
    """
    field = None
    nvars = None
    terms = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "field":
            field = parse_field(" ".join(toks[1:]))
            continue
        if toks[0] == "vars":
            nvars = int(toks[1])
            continue
        if field is None or nvars is None:
            raise ValueError("term line before 'field'/'vars' headers")
        if len(toks) != nvars + 1:
            raise ValueError("term line %r: expected coefficient + %d exponents"
                             % (line, nvars))
        terms.append((toks[0], tuple(int(t) for t in toks[1:])))
    if field is None or nvars is None:
        raise ValueError("missing 'field' or 'vars' header")
    if not terms:
        raise ValueError("form has no terms")
    degs = {sum(e) for _, e in terms}
    if len(degs) != 1:
        raise ValueError("form is not homogeneous: degrees %s" % sorted(degs))
    degree = degs.pop()
    out = MultiForm.zero(field, nvars, degree)
    for c, e in terms:
        out = out + MultiForm(field, nvars, degree, {e: field.scalar(c)})
    return out


def format_scalar(c) -> str:
    if isinstance(c, Fp):
        return str(c.v)
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def format_form(P: MultiForm) -> str:
    lines = ["field %s" % ("Q" if P.field.is_rational else "Fp %d" % P.field.p),
             "vars %d" % P.nvars]
    for e, c in P.sorted_terms():
        lines.append(" ".join([format_scalar(c)] + [str(k) for k in e]))
    return "\n".join(lines) + "\n"
