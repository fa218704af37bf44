"""Based quantum tori over exact coefficient rings.

Elements are finite sums of normalized monomials x^a indexed by integer
exponent vectors.  The defining relations come from a skew-symmetric
integer form L: x^a * x^b = v^{L(a,b)} x^{a+b}, where v is a square root
of q.  Depending on the coefficient ring, v is kept symbolic (Laurent or
rational coefficients), sent to a root of unity, or sent to 1.
"""

from __future__ import annotations

from .coeff import CycloInt, ExactDivisionError, IntLaurent, Point, RatFunc, specialize


class NonExactDivision(ArithmeticError):
    """Right division had no solution in the torus over this coefficient ring."""


class NotCommutationCompatible(ValueError):
    """A pair of generators failed the required commutation relation."""


# -- coefficient ring adapters --------------------------------------------
#
# A ring adapter bundles the constants and the image of v so torus code can
# stay generic.  Elements themselves carry the arithmetic.

class LaurentRing:
    """Integer Laurent polynomials in v."""

    name = "laurent"

    def zero(self):
        return IntLaurent.zero()

    def one(self):
        return IntLaurent.one()

    def from_int(self, n):
        return IntLaurent.from_int(n)

    def v_power(self, e):
        return IntLaurent.v_power(e)

    def is_zero(self, c):
        return c.is_zero

    def div(self, a, b):
        return a.exact_div(b)

    def inv_unit(self, c):
        if len(c.terms) == 1:
            (e, coeff), = c.terms.items()
            if coeff in (1, -1):
                return IntLaurent({-e: coeff})
        raise ExactDivisionError(f"{c!r} is not a unit monomial in v")

    def __eq__(self, other):
        return type(other) is LaurentRing

    def __hash__(self):
        return hash("laurent")


class RatRing:
    """Rational functions in v; a field, so division always succeeds."""

    name = "rational"

    def zero(self):
        return RatFunc.zero()

    def one(self):
        return RatFunc.one()

    def from_int(self, n):
        return RatFunc.from_int(n)

    def v_power(self, e):
        return RatFunc.v_power(e)

    def is_zero(self, c):
        return c.is_zero

    def div(self, a, b):
        return a / b

    def inv_unit(self, c):
        return c.inv()

    def __eq__(self, other):
        return type(other) is RatRing

    def __hash__(self):
        return hash("rational")


class CycloRing:
    """Z[eps] for a primitive odd l-th root of unity eps.

    point selects where v goes: at ONE every v power collapses to 1, at
    EPS the power v^e maps to eps^{e(l+1)/2} using the square root
    eps^{(l+1)/2} of eps.
    """

    name = "cyclo"

    def __init__(self, l: int, point: Point):
        if l < 3 or l % 2 == 0:
            raise ValueError("order must be an odd integer >= 3")
        self.l = l
        self.point = point

    def zero(self):
        return CycloInt.zero(self.l)

    def one(self):
        return CycloInt.from_int(self.l, 1)

    def from_int(self, n):
        return CycloInt.from_int(self.l, n)

    def v_power(self, e):
        if self.point is Point.ONE:
            return CycloInt.from_int(self.l, 1)
        return CycloInt.eps_power(self.l, (e * ((self.l + 1) // 2)) % self.l)

    def is_zero(self, c):
        return c.is_zero

    def div(self, a, b):
        raise ExactDivisionError("no exact division over cyclotomic integers")

    def inv_unit(self, c):
        # only the monomial units +-eps^j ever need inverting here
        for j in range(self.l):
            p = CycloInt.eps_power(self.l, j)
            if c == p:
                return CycloInt.eps_power(self.l, (self.l - j) % self.l)
            if c == -p:
                return -CycloInt.eps_power(self.l, (self.l - j) % self.l)
        raise ExactDivisionError("not a recognized cyclotomic unit")

    def specialize_coeff(self, c: IntLaurent) -> CycloInt:
        return specialize(c, self.l, self.point)

    def __eq__(self, other):
        return type(other) is CycloRing and (self.l, self.point) == (other.l, other.point)

    def __hash__(self):
        return hash(("cyclo", self.l, self.point))


class ModInt:
    """Integer mod p whose arithmetic reduces, so coefficient sums inside
    torus term dicts stay in canonical range."""

    __slots__ = ("p", "value")

    def __init__(self, p: int, value: int):
        self.p = p
        self.value = value % p

    def _value_of(self, other):
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise ValueError("mixed moduli")
            return other.value
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        v = self._value_of(other)
        if v is None:
            return NotImplemented
        return ModInt(self.p, self.value + v)

    __radd__ = __add__

    def __neg__(self):
        return ModInt(self.p, -self.value)

    def __sub__(self, other):
        v = self._value_of(other)
        if v is None:
            return NotImplemented
        return ModInt(self.p, self.value - v)

    def __rsub__(self, other):
        v = self._value_of(other)
        if v is None:
            return NotImplemented
        return ModInt(self.p, v - self.value)

    def __mul__(self, other):
        v = self._value_of(other)
        if v is None:
            return NotImplemented
        return ModInt(self.p, self.value * v)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, ModInt):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.value))

    def __repr__(self):
        return f"{self.value}"


class PrimeField:
    """F_p with v already sent to 1; elements are ModInt wrappers."""

    name = "primefield"

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def _coerce(self, c) -> ModInt:
        return c if isinstance(c, ModInt) else ModInt(self.p, c)

    def zero(self):
        return ModInt(self.p, 0)

    def one(self):
        return ModInt(self.p, 1)

    def from_int(self, n):
        return ModInt(self.p, n)

    def v_power(self, e):
        return ModInt(self.p, 1)

    def is_zero(self, c):
        return self._coerce(c).value == 0

    def div(self, a, b):
        b = self._coerce(b)
        if b.value == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return ModInt(self.p, self._coerce(a).value * pow(b.value, self.p - 2, self.p))

    def inv_unit(self, c):
        return self.div(1, c)

    def __eq__(self, other):
        return type(other) is PrimeField and self.p == other.p

    def __hash__(self):
        return hash(("primefield", self.p))


# -- the skew form ---------------------------------------------------------

class SkewForm:
    """Skew-symmetric integer matrix on Z^r, applied to exponent vectors."""

    __slots__ = ("mat", "r")

    def __init__(self, mat):
        m = tuple(tuple(int(x) for x in row) for row in mat)
        r = len(m)
        if any(len(row) != r for row in m):
            raise ValueError("form matrix must be square")
        for i in range(r):
            for j in range(i, r):
                if m[i][j] != -m[j][i]:
                    raise ValueError(f"form not skew-symmetric at ({i}, {j})")
        self.mat = m
        self.r = r

    def __eq__(self, other):
        return isinstance(other, SkewForm) and self.mat == other.mat

    def __hash__(self):
        return hash(self.mat)

    def __repr__(self):
        return f"SkewForm({self.mat})"

    def __call__(self, a, b) -> int:
        total = 0
        mat = self.mat
        for i, ai in enumerate(a):
            if ai:
                row = mat[i]
                total += ai * sum(row[j] * bj for j, bj in enumerate(b) if bj)
        return total

    def twist(self, a) -> int:
        """Exponent of v normalizing the ordered product x_1^{a_1} ... x_r^{a_r}."""
        total = 0
        mat = self.mat
        for i, ai in enumerate(a):
            if ai:
                row = mat[i]
                total += ai * sum(row[j] * a[j] for j in range(i))
        return total


# -- torus elements --------------------------------------------------------

class TorusElement:
    """Finite sum of monomials c_a x^a over a fixed ring and skew form."""

    __slots__ = ("ring", "form", "terms")

    def __init__(self, ring, form: SkewForm, terms: dict):
        self.ring = ring
        self.form = form
        self.terms = {a: c for a, c in terms.items() if not ring.is_zero(c)}

    @classmethod
    def zero(cls, ring, form):
        return cls(ring, form, {})

    @classmethod
    def one(cls, ring, form):
        return cls(ring, form, {(0,) * form.r: ring.one()})

    @classmethod
    def monomial(cls, ring, form, a, coeff=None):
        a = tuple(int(x) for x in a)
        if len(a) != form.r:
            raise ValueError("exponent vector has wrong length")
        return cls(ring, form, {a: ring.one() if coeff is None else coeff})

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check_peer(self, other):
        if self.ring != other.ring or self.form != other.form:
            raise ValueError("mixed torus arithmetic")

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return (self.ring == other.ring and self.form == other.form
                and self.terms == other.terms)

    __hash__ = None

    def __add__(self, other):
        self._check_peer(other)
        out = dict(self.terms)
        ring = self.ring
        for a, c in other.terms.items():
            if a in out:
                s = out[a] + c
                if ring.is_zero(s):
                    del out[a]
                else:
                    out[a] = s
            else:
                out[a] = c
        return TorusElement(ring, self.form, out)

    def __neg__(self):
        return TorusElement(self.ring, self.form, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_peer(other)
        ring, form = self.ring, self.form
        out: dict = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                c = ca * cb * ring.v_power(form(a, b))
                if key in out:
                    s = out[key] + c
                    if ring.is_zero(s):
                        del out[key]
                    else:
                        out[key] = s
                else:
                    out[key] = c
        return TorusElement(ring, form, out)

    def scale(self, coeff):
        return TorusElement(self.ring, self.form,
                            {a: c * coeff for a, c in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            return self.inv_monomial() ** (-n)
        result = TorusElement.one(self.ring, self.form)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n > 1
            if base_needed:
                base = base * base
            n >>= 1
        return result

    def inv_monomial(self):
        """Inverse of a single monomial c x^a; (c x^a)(c^-1 x^-a) = 1 since L(a,a) = 0."""
        if len(self.terms) != 1:
            raise NonExactDivision("only monomials can be inverted")
        (a, c), = self.terms.items()
        inv = self.ring.inv_unit(c)
        return TorusElement(self.ring, self.form, {tuple(-x for x in a): inv})

    def coeff(self, a):
        return self.terms.get(tuple(a), self.ring.zero())

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for a in sorted(self.terms, reverse=True):
            bits.append(f"({self.terms[a]!r})*x^{a}")
        return " + ".join(bits)


def normal_product(variables, cluster_form: SkewForm, a, *, check=False) -> TorusElement:
    """Normalized monomial v^{twist(a)} y_1^{a_1} ... y_r^{a_r}.

    The y_i are torus elements commuting by cluster_form (in the given
    order); the result lives wherever the y_i do, typically the initial
    torus.  With check=True the pairwise commutation y_i y_j =
    v^{2 l_ij} y_j y_i is verified first.
    """
    a = tuple(int(x) for x in a)
    if len(variables) != cluster_form.r or len(a) != cluster_form.r:
        raise ValueError("variable list, form and exponent sizes disagree")
    if check:
        for i in range(len(variables)):
            for j in range(i + 1, len(variables)):
                lam = cluster_form.mat[i][j]
                ring = variables[i].ring
                lhs = variables[i] * variables[j]
                rhs = (variables[j] * variables[i]).scale(ring.v_power(2 * lam))
                if lhs != rhs:
                    raise NotCommutationCompatible(
                        f"variables {i} and {j} do not commute by v^{2 * lam}")
    ring = variables[0].ring
    ambient = variables[0].form
    out = TorusElement.one(ring, ambient).scale(ring.v_power(cluster_form.twist(a)))
    for y, e in zip(variables, a):
        if e:
            out = out * (y ** e)
    return out


def exact_right_divide(g: TorusElement, f: TorusElement) -> TorusElement:
    """Solve h * f = g in the torus; raise NonExactDivision when no h exists.

    Works by cancelling lex-leading terms.  Candidate exponents of h are
    confined to the box [min(g) - min(f), max(g) - max(f)] taken
    coordinatewise over supports, which bounds the search and forces
    termination; any step outside the box proves there is no solution.
    """
    g._check_peer(f)
    if f.is_zero:
        raise ZeroDivisionError("right division by zero")
    ring, form = g.ring, g.form
    if g.is_zero:
        return TorusElement.zero(ring, form)
    r = form.r
    g_sup, f_sup = list(g.terms), list(f.terms)
    lo = tuple(min(a[i] for a in g_sup) - min(b[i] for b in f_sup) for i in range(r))
    hi = tuple(max(a[i] for a in g_sup) - max(b[i] for b in f_sup) for i in range(r))
    lm_f = max(f.terms)
    lc_f = f.terms[lm_f]
    rem = dict(g.terms)
    quot: dict = {}
    while rem:
        lm_r = max(rem)
        t = tuple(x - y for x, y in zip(lm_r, lm_f))
        if any(not lo[i] <= t[i] <= hi[i] for i in range(r)):
            raise NonExactDivision(f"required exponent {t} escapes the quotient box")
        try:
            c = ring.div(rem[lm_r], lc_f * ring.v_power(form(t, lm_f)))
        except ExactDivisionError as exc:
            raise NonExactDivision(f"coefficient not divisible: {exc}") from exc
        quot[t] = c
        for b, cb in f.terms.items():
            key = tuple(x + y for x, y in zip(t, b))
            delta = c * cb * ring.v_power(form(t, b))
            cur = rem.get(key, ring.zero()) - delta
            if ring.is_zero(cur):
                rem.pop(key, None)
            else:
                rem[key] = cur
    return TorusElement(ring, form, quot)
