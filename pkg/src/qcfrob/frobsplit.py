"""Root-of-unity specialization of torus expansions and the exponent maps
between the specialized tori.

The engine computes cluster variables exactly over integer Laurent
coefficients; here those expansions are pushed to the cyclotomic rings at
v = 1 and v = eps (or to a prime field with v = 1), where the maps that
scale exponent vectors by l, divide them by l, or divide them by p live.
The headline identity checked by TheoremSession.check is that both maps
send cluster monomials to cluster monomials.
"""

from __future__ import annotations

import math

from .coeff import CycloInt, Point
from .cluster import cluster_monomial, mutate_seed, seed_from_word
from .qtorus import CycloRing, LaurentRing, PrimeField, SkewForm, TorusElement
from .rootdatum import is_reduced
from .uqn import CheckOutcome


# -- moving expansions between coefficient rings ---------------------------

def spec_torus(f: TorusElement, l: int, point: Point) -> TorusElement:
    """Specialize integer-Laurent coefficients at v = 1 or v = eps.

    Coefficientwise on the monomial basis; multiplicative because the
    coefficient specialization is a ring map sending v^m to the ring's
    v_power(m).
    """
    ring = CycloRing(l, point)
    terms = {}
    for a, c in f.terms.items():
        s = ring.specialize_coeff(c)
        if not s.is_zero:
            terms[a] = s
    return TorusElement(ring, f.form, terms)


def reduce_mod_p(f: TorusElement, p: int) -> TorusElement:
    """Send v to 1 and reduce the resulting integer coefficients mod p."""
    ring = PrimeField(p)
    terms = {}
    for a, c in f.terms.items():
        r = ring.from_int(c.at_one())
        if r.value:
            terms[a] = r
    return TorusElement(ring, f.form, terms)


def _cyclo_ring(f: TorusElement, point: Point) -> CycloRing:
    ring = f.ring
    if not isinstance(ring, CycloRing) or ring.point is not point:
        raise ValueError(f"expected a cyclotomic torus element at {point.name}")
    return ring


# -- the exponent-scaling maps ---------------------------------------------

def fr_star(f: TorusElement) -> TorusElement:
    """Push forward from the v=1 torus to the v=eps torus by a -> l a.

    A ring homomorphism: the image monomials commute up to
    eps^{(l+1)/2 * L(la, lb)} and l divides l^2 L(a, b), so the inserted
    root-of-unity powers are all 1.
    """
    ring = _cyclo_ring(f, Point.ONE)
    l = ring.l
    out = CycloRing(l, Point.EPS)
    terms = {tuple(l * x for x in a): c for a, c in f.terms.items()}
    return TorusElement(out, f.form, terms)


def frp_star(f: TorusElement) -> TorusElement:
    """Split back from the v=eps torus: keep monomials with all exponents
    divisible by l, divide those by l, kill everything else."""
    ring = _cyclo_ring(f, Point.EPS)
    l = ring.l
    out = CycloRing(l, Point.ONE)
    terms = {}
    for a, c in f.terms.items():
        if all(x % l == 0 for x in a):
            terms[tuple(x // l for x in a)] = c
    return TorusElement(out, f.form, terms)


def modp_split(f: TorusElement) -> TorusElement:
    """Characteristic-p splitting on the commutative mod-p torus: keep
    monomials with exponents divisible by p and divide them by p.

    Coefficients are fixed since x -> x^p is the identity on F_p.
    """
    ring = f.ring
    if not isinstance(ring, PrimeField):
        raise ValueError("expected a mod-p torus element")
    p = ring.p
    terms = {}
    for a, c in f.terms.items():
        if all(x % p == 0 for x in a):
            terms[tuple(x // p for x in a)] = c
    return TorusElement(ring, f.form, terms)


def embed_padded(f: TorusElement, wide_form: SkewForm) -> TorusElement:
    """Reindex into a wider torus by padding exponent vectors with zeros."""
    extra = wide_form.r - f.form.r
    if extra < 0:
        raise ValueError("target torus is narrower than the source")
    pad = (0,) * extra
    return TorusElement(f.ring, wide_form, {a + pad: c for a, c in f.terms.items()})


def reduction_commutes(datum, word, prefix_len: int, elems) -> CheckOutcome:
    """Splitting on a prefix-word torus agrees with splitting after the
    zero-padding embedding into the full word's torus.

    The mod-p torus is commutative, so the skew form is carried along for
    shape only; the embedded form is the zero extension of the sample
    elements' own form.
    """
    word = tuple(word)
    if not is_reduced(datum, word):
        raise ValueError("word is not reduced")
    if not 1 <= prefix_len <= len(word):
        raise ValueError("prefix length out of range")
    if not is_reduced(datum, word[:prefix_len]):
        raise ValueError("prefix is not reduced")
    elems = list(elems)
    checked = 0
    for f in elems:
        if f.form.r != prefix_len:
            raise ValueError("sample element does not live on the prefix torus")
        wide = [[0] * len(word) for _ in range(len(word))]
        for i in range(prefix_len):
            for j in range(prefix_len):
                wide[i][j] = f.form.mat[i][j]
        wide_form = SkewForm(wide)
        left = embed_padded(modp_split(f), wide_form)
        right = modp_split(embed_padded(f, wide_form))
        checked += 1
        if left != right:
            witness = _first_difference(left, right)
            witness["element"] = repr(f)
            return CheckOutcome("splitting-reduction", False, checked, witness=witness)
    return CheckOutcome("splitting-reduction", True, checked)


# -- expanding cluster monomials over a specialized ring -------------------

def _specialized_variable(y: TorusElement, ring):
    if isinstance(ring, CycloRing):
        return spec_torus(y, ring.l, ring.point)
    if isinstance(ring, PrimeField):
        return reduce_mod_p(y, ring.p)
    if isinstance(ring, LaurentRing):
        return y
    raise ValueError(f"no specialization onto {ring!r}")


class SeedExpander:
    """Cluster-monomial expansions of one seed over a fixed coefficient ring.

    Expanding directly over the specialized ring is legitimate because the
    coefficient specialization is a ring map, so it commutes with the
    normal-ordered product defining x^a.  Powers of single variables are
    cached, and products over the leading block of positions (everything up
    to the last exchangeable position; for the words used here that block
    is exactly the exchangeable positions) are memoized by exponent prefix.
    Variables past the block stay single monomials under mutation, so they
    fold in at cost proportional to the accumulated term count.
    """

    def __init__(self, seed, ring):
        self.seed = seed
        self.ring = ring
        self.size = len(seed.variables)
        self.variables = [_specialized_variable(y, ring) for y in seed.variables]
        self.ambient = self.variables[0].form
        cols = seed.btilde.cols
        self._block = (max(cols) + 1) if cols else 0
        self._pows: dict = {}
        self._prefix: dict = {}

    def _power(self, t: int, e: int) -> TorusElement:
        key = (t, e)
        got = self._pows.get(key)
        if got is None:
            got = self.variables[t] ** e
            self._pows[key] = got
        return got

    def _block_product(self, prefix) -> TorusElement:
        if not prefix:
            return TorusElement.one(self.ring, self.ambient)
        got = self._prefix.get(prefix)
        if got is None:
            got = self._block_product(prefix[:-1]) * self._power(len(prefix) - 1, prefix[-1])
            self._prefix[prefix] = got
        return got

    def monomial(self, a) -> TorusElement:
        """Expansion of the normalized cluster monomial x^a at this ring."""
        a = tuple(int(x) for x in a)
        if len(a) != self.size:
            raise ValueError("exponent vector has wrong length")
        acc = self._block_product(a[:self._block])
        for t in range(self._block, self.size):
            if a[t]:
                acc = acc * self._power(t, a[t])
        return acc.scale(self.ring.v_power(self.seed.lam.twist(a)))


def _first_difference(left: TorusElement, right: TorusElement) -> dict:
    for key in sorted(set(left.terms) | set(right.terms)):
        cl, cr = left.coeff(key), right.coeff(key)
        if cl != cr:
            return {"monomial": list(key), "left": repr(cl), "right": repr(cr)}
    raise AssertionError("elements do not differ")


# -- the theorem checker ---------------------------------------------------

def require_valid_order(datum, l: int):
    """The root-of-unity order must be odd and coprime to twice every
    symmetrizer entry."""
    if l < 3 or l % 2 == 0:
        raise ValueError("order must be an odd integer >= 3")
    for t in datum.sym:
        if math.gcd(l, 2 * t) != 1:
            raise ValueError(f"order {l} is not coprime to the root length 2*{t}")


class TheoremSession:
    """Checks, for one mutated seed and one odd order l, that the exponent
    maps between the v=1 and v=eps tori send cluster monomials to cluster
    monomials: the pushforward takes x^a at 1 to x^{la} at eps, and the
    splitting takes x^a at eps to x^{a/l} at 1 (zero when l does not
    divide a)."""

    def __init__(self, seed, l: int):
        require_valid_order(seed.datum, l)
        self.seed = seed
        self.l = l
        self.at_one = SeedExpander(seed, CycloRing(l, Point.ONE))
        self.at_eps = SeedExpander(seed, CycloRing(l, Point.EPS))

    def check(self, a, *, name: str = "theorem") -> CheckOutcome:
        l = self.l
        a = tuple(int(x) for x in a)
        if any(x < 0 for x in a):
            raise ValueError("cluster monomial exponents must be nonnegative")

        pushed = fr_star(self.at_one.monomial(a))
        scaled = self.at_eps.monomial(tuple(l * x for x in a))
        if pushed != scaled:
            witness = _first_difference(pushed, scaled)
            witness.update(branch="pushforward", exponent=list(a))
            return CheckOutcome(name, False, 1, witness=witness)

        split = frp_star(self.at_eps.monomial(a))
        if all(x % l == 0 for x in a):
            expected = self.at_one.monomial(tuple(x // l for x in a))
        else:
            expected = TorusElement.zero(self.at_one.ring, self.at_one.ambient)
        if split != expected:
            witness = _first_difference(split, expected)
            witness.update(branch="splitting", exponent=list(a))
            return CheckOutcome(name, False, 2, witness=witness)

        return CheckOutcome(name, True, 2)


def verify_theorem(datum, word, lam, mutations, a, l: int) -> CheckOutcome:
    """One-shot wrapper: build the seed for the word, mutate along the given
    position sequence, and run both branches of the check at exponent a."""
    seed = seed_from_word(datum, word, lam)
    for pos in mutations:
        seed = mutate_seed(seed, pos)
    return TheoremSession(seed, l).check(a)


def check_modp_division(expander: SeedExpander, a) -> CheckOutcome:
    """Mod-p shadow of the theorem: the splitting of the mod-p expansion of
    x^a is the expansion of x^{a/p}, or zero when p does not divide a."""
    p = expander.ring.p
    a = tuple(int(x) for x in a)
    got = modp_split(expander.monomial(a))
    if all(x % p == 0 for x in a):
        want = expander.monomial(tuple(x // p for x in a))
    else:
        want = TorusElement.zero(expander.ring, expander.ambient)
    if got != want:
        witness = _first_difference(got, want)
        witness["exponent"] = list(a)
        return CheckOutcome("splitting-degree-division", False, 1, witness=witness)
    return CheckOutcome("splitting-degree-division", True, 1)


# -- randomized property material ------------------------------------------

def random_torus_element(rng, ring, form: SkewForm, *, nterms=3, span=2, coeff_span=4):
    """Small random element for property trials; coefficients exercise the
    whole ring (all powers of eps over a cyclotomic ring)."""
    out = TorusElement.zero(ring, form)
    for _ in range(nterms):
        a = tuple(rng.randint(-span, span) for _ in range(form.r))
        if isinstance(ring, CycloRing):
            c = CycloInt.zero(ring.l)
            for j in range(ring.l - 1):
                n = rng.randint(-coeff_span, coeff_span)
                if n:
                    c = c + CycloInt.eps_power(ring.l, j) * CycloInt.from_int(ring.l, n)
        else:
            c = ring.from_int(rng.randint(-coeff_span, coeff_span))
        if not ring.is_zero(c):
            out = out + TorusElement.monomial(ring, form, a, c)
    return out


def check_split_axioms(form: SkewForm, p: int, rng, trials: int) -> CheckOutcome:
    """The defining identities of a splitting on the mod-p torus: fixes 1,
    satisfies the projection formula phi(f^p g) = f phi(g), and inverts the
    p-th power map."""
    ring = PrimeField(p)
    one = TorusElement.one(ring, form)
    checked = 0
    if modp_split(one) != one:
        return CheckOutcome("splitting-axioms", False, 1,
                            witness={"identity": "phi(1) != 1"})
    checked += 1
    for _ in range(trials):
        f = random_torus_element(rng, ring, form)
        g = random_torus_element(rng, ring, form)
        if modp_split((f ** p) * g) != f * modp_split(g):
            return CheckOutcome("splitting-axioms", False, checked + 1,
                                witness={"identity": "projection formula",
                                         "f": repr(f), "g": repr(g)})
        checked += 1
        if modp_split(f ** p) != f:
            return CheckOutcome("splitting-axioms", False, checked + 1,
                                witness={"identity": "phi(f^p) != f", "f": repr(f)})
        checked += 1
    return CheckOutcome("splitting-axioms", True, checked)
