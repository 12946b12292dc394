"""Free graded algebra on the supersymmetry generator alphabet.

Words are tuples of generator names; elements are finite Scalar-weighted sums
of words kept in normal form under a terminating rewrite system.  The rules
orient the bracket table plus the quantum-group and grading-operator
relations so that every reduction strictly decreases (EF-degree, length,
inversions), which makes the system terminating by construction; confluence
is exercised by randomized joinability tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import conventions as cv
from .scalars import SYMBOLIC, GRat

UNIT_NAME = "Id"


class NonterminationError(RuntimeError):
    """Step budget exhausted: the rule set does not terminate."""


@dataclass(frozen=True)
class Generator:
    name: str
    parity: int
    sector: str
    sort_key: int
    # structured indices, e.g. ("Q", 1, 1); used by rule building and reports
    kind: str = ""
    idx: tuple = ()


class RewriteSystem:
    """Pair rules  x·y -> sum_k c_k · w_k  applied at the leftmost redex."""

    def __init__(self, rules, max_steps=2_000_000):
        self.rules = rules
        self.max_steps = max_steps

    def reduce_terms(self, terms):
        """Normalize a {word: coeff} dict; raises NonterminationError."""
        rules = self.rules
        out = {}
        stack = list(terms.items())
        steps = 0
        while stack:
            word, coeff = stack.pop()
            pos = -1
            n = len(word)
            for i in range(n - 1):
                if (word[i], word[i + 1]) in rules:
                    pos = i
                    break
            if pos < 0:
                acc = out.get(word)
                acc = coeff if acc is None else acc + coeff
                if acc:
                    out[word] = acc
                elif word in out:
                    del out[word]
                continue
            steps += 1
            if steps > self.max_steps:
                raise NonterminationError(
                    "rewrite budget of %d steps exhausted; the rule set "
                    "appears to be non-terminating" % self.max_steps)
            head, tail = word[:pos], word[pos + 2:]
            for c, repl in rules[(word[pos], word[pos + 1])]:
                stack.append((head + repl + tail, coeff * c))
        return out


class AlgebraElement:
    """Finite sum of Scalar-weighted words, stored in normal form."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms, normalize=True):
        self.algebra = algebra
        if normalize:
            terms = algebra.rewrite.reduce_terms(terms)
        self.terms = terms

    def __add__(self, other):
        other = self.algebra.coerce(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            acc = terms.get(w)
            acc = c if acc is None else acc + c
            if acc:
                terms[w] = acc
            elif w in terms:
                del terms[w]
        return AlgebraElement(self.algebra, terms, normalize=False)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self.algebra.coerce(other))

    def __rsub__(self, other):
        return self.algebra.coerce(other) + (-self)

    def __neg__(self):
        return AlgebraElement(self.algebra,
                              {w: -c for w, c in self.terms.items()},
                              normalize=False)

    def __mul__(self, other):
        if self._is_scalar_like(other):
            return self.scale(other)
        other = self.algebra.coerce(other)
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                acc = terms.get(w)
                terms[w] = c if acc is None else acc + c
        return AlgebraElement(self.algebra, terms)

    def __rmul__(self, other):
        if self._is_scalar_like(other):
            return self.scale(other)
        return self.algebra.coerce(other) * self

    def _is_scalar_like(self, x):
        return not isinstance(x, AlgebraElement) and not isinstance(x, (str, tuple))

    def scale(self, c):
        c = self.algebra.scalar(c)
        if not c:
            return self.algebra.zero()
        return AlgebraElement(self.algebra,
                              {w: c * v for w, v in self.terms.items()},
                              normalize=False)

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def normal_form(self):
        """Re-reduce; idempotent by construction."""
        return AlgebraElement(self.algebra, dict(self.terms))

    def coeff(self, word):
        return self.terms.get(tuple(word), self.algebra.field.zero())

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            word = "*".join(w) if w else UNIT_NAME
            cs = repr(c)
            if cs == "1":
                parts.append(word)
            elif cs == "-1":
                parts.append("-" + word)
            else:
                if ("+" in cs[1:] or "-" in cs[1:] or "/" in cs) and not (
                        cs.startswith("(") and cs.endswith(")")):
                    cs = "(%s)" % cs
                parts.append("%s*%s" % (cs, word))
        return " + ".join(parts).replace("+ -", "- ")


class SusyAlgebra:
    """The configured generator alphabet, rewrite system and helper API.

    n_susy is the number N of supersymmetries; the coefficient field is
    symbolic by default and may be a NumericField for fast specializations.
    """

    def __init__(self, n_susy=2, field=SYMBOLIC, max_steps=2_000_000):
        if n_susy < 1:
            raise ValueError("n_susy must be >= 1")
        self.n_susy = n_susy
        self.field = field
        # quantum relations divide by q^2 - q^-2; reject fields where it dies
        denom = field.q_power(2) - field.q_power(-2)
        if not denom:
            raise ValueError(
                "q^2 - q^-2 vanishes in this field (q = 1?); use the symbolic "
                "field and take classical limits instead")
        self.generators = {}
        self._build_generators()
        self.rewrite = RewriteSystem(self._build_rules(), max_steps=max_steps)
        self._zero = AlgebraElement(self, {}, normalize=False)
        self._one = AlgebraElement(self, {(): field.one()}, normalize=False)

    # -- alphabet ------------------------------------------------------------

    def _add_gen(self, name, parity, sector, kind, idx):
        g = Generator(name, parity, sector, len(self.generators), kind, idx)
        self.generators[name] = g

    def _build_generators(self):
        n = self.n_susy
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                self._add_gen("Zs[%d,%d]" % (i, j), 1, "center", "Zs", (i, j))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                self._add_gen("Z[%d,%d]" % (i, j), 1, "center", "Z", (i, j))
        for m in range(4):
            self._add_gen("P%d" % m, 1, "poincare", "P", (m,))
        for m in range(4):
            for k in range(m + 1, 4):
                self._add_gen("J%d%d" % (m, k), 1, "poincare", "J", (m, k))
        for a in (1, 2):
            for i in range(1, n + 1):
                self._add_gen("Q[%d,%d]" % (a, i), -1, "susy", "Q", (a, i))
        for a in (1, 2):
            for i in range(1, n + 1):
                self._add_gen("Qb[%d,%d]" % (a, i), -1, "susy", "Qb", (a, i))
        self._add_gen("F", 1, "quantum", "F", ())
        self._add_gen("E", 1, "quantum", "E", ())
        self._add_gen("Kinv", 1, "quantum", "Kinv", ())
        self._add_gen("K", 1, "quantum", "K", ())
        self._add_gen("Jg", 1, "grading", "Jg", ())

    def gen(self, name):
        g = self.generators.get(name)
        if g is None:
            raise KeyError("unknown generator %r" % (name,))
        return g

    def generator_names(self):
        return list(self.generators)

    # -- rewrite rules ---------------------------------------------------------

    def _lift(self, grat):
        """GRat convention entry -> field element."""
        f = self.field
        out = f.of(grat.re)
        if grat.im:
            out = out + f.i() * f.of(grat.im)
        return out

    def _z_word(self, i, j, star):
        """Resolve Z^{ij} (or Z*_{ij}) to (sign, word) with i<j storage."""
        if i == j:
            return None
        kind = "Zs" if star else "Z"
        if i < j:
            return 1, ("%s[%d,%d]" % (kind, i, j),)
        return -1, ("%s[%d,%d]" % (kind, j, i),)

    def _j_word(self, m, k):
        if m == k:
            return None
        if m < k:
            return 1, ("J%d%d" % (m, k),)
        return -1, ("J%d%d" % (k, m),)

    def _build_rules(self):
        f = self.field
        one = f.one()
        qr = f.q_power(2)
        qr_inv = f.q_power(-2)
        ef_c = one / (f.q_power(2) - f.q_power(-2))
        rules = {}
        gens = list(self.generators.values())

        def put(x, y, rhs):
            rhs = [(c, w) for c, w in rhs if c]
            rules[(x.name, y.name)] = rhs

        for x in gens:
            for y in gens:
                if x.kind == "Jg":
                    if y.kind == "Jg":
                        put(x, y, [(one, ())])
                    else:
                        put(x, y, [(f.of(y.parity), (y.name,))])
                    continue
                if x.sort_key <= y.sort_key:
                    if x.kind == "Kinv" and y.kind == "K":
                        put(x, y, [(one, ())])
                    elif x.name == y.name and x.kind in ("Q", "Qb"):
                        put(x, y, [])
                    continue
                # from here on: word x·y with x strictly after y in sort order
                swap = [(one, (y.name, x.name))]
                if x.sector == "center" or y.sector == "center":
                    put(x, y, swap)
                elif x.sector == "quantum" and y.sector in ("poincare", "susy"):
                    put(x, y, swap)
                elif x.kind == "K" and y.kind == "Kinv":
                    put(x, y, [(one, ())])
                elif x.kind == "K" and y.kind == "E":
                    put(x, y, [(qr, (y.name, x.name))])
                elif x.kind == "K" and y.kind == "F":
                    put(x, y, [(qr_inv, (y.name, x.name))])
                elif x.kind == "Kinv" and y.kind == "E":
                    put(x, y, [(qr_inv, (y.name, x.name))])
                elif x.kind == "Kinv" and y.kind == "F":
                    put(x, y, [(qr, (y.name, x.name))])
                elif x.kind == "E" and y.kind == "F":
                    put(x, y, [(one, ("F", "E")),
                               (ef_c, ("K", "K")),
                               (-ef_c, ("Kinv", "Kinv"))])
                elif x.kind == "Q" and y.kind == "Q":
                    a, i = x.idx
                    b, j = y.idx
                    rhs = [(-one, (y.name, x.name))]
                    z = self._z_word(i, j, star=False)
                    if z is not None:
                        sign, zw = z
                        eps = cv.EPS_LO[a - 1][b - 1]
                        rhs.append((self._lift(eps) * f.of(sign), zw))
                    put(x, y, rhs)
                elif x.kind == "Qb" and y.kind == "Qb":
                    a, i = x.idx
                    b, j = y.idx
                    rhs = [(-one, (y.name, x.name))]
                    z = self._z_word(i, j, star=True)
                    if z is not None:
                        sign, zw = z
                        eps = cv.EPS_LO[a - 1][b - 1]
                        rhs.append((self._lift(eps) * f.of(sign), zw))
                    put(x, y, rhs)
                elif x.kind == "Qb" and y.kind == "Q":
                    bd, j = x.idx
                    a, i = y.idx
                    rhs = [(-one, (y.name, x.name))]
                    if i == j:
                        for mu in range(4):
                            c = cv.SIGMA_UP[mu][a - 1][bd - 1]
                            if c:
                                rhs.append((f.of(2) * self._lift(c),
                                            ("P%d" % mu,)))
                    put(x, y, rhs)
                elif x.kind in ("Q", "Qb") and y.kind == "P":
                    put(x, y, swap)
                elif x.kind == "Q" and y.kind == "J":
                    a, i = x.idx
                    m, k = y.idx
                    b = cv.b_lorentz(m, k)
                    rhs = list(swap)
                    for beta in (1, 2):
                        c = b[a - 1][beta - 1]
                        if c:
                            rhs.append((self._lift(c), ("Q[%d,%d]" % (beta, i),)))
                    put(x, y, rhs)
                elif x.kind == "Qb" and y.kind == "J":
                    a, i = x.idx
                    m, k = y.idx
                    b = cv.bbar_lorentz(m, k)
                    rhs = list(swap)
                    for beta in (1, 2):
                        c = b[a - 1][beta - 1]
                        if c:
                            rhs.append((self._lift(c), ("Qb[%d,%d]" % (beta, i),)))
                    put(x, y, rhs)
                elif x.kind == "J" and y.kind == "P":
                    r, nn = x.idx
                    mu = y.idx[0]
                    rhs = list(swap)
                    # J_{rn} P_mu = P_mu J_{rn} - eta_{mu r} P_n + eta_{mu n} P_r
                    if mu == r and cv.ETA[mu]:
                        rhs.append((f.of(-cv.ETA[mu]), ("P%d" % nn,)))
                    if mu == nn and cv.ETA[mu]:
                        rhs.append((f.of(cv.ETA[mu]), ("P%d" % r,)))
                    put(x, y, rhs)
                elif x.kind == "J" and y.kind == "J":
                    m, nn = x.idx
                    r, ss = y.idx
                    rhs = list(swap)
                    for eta_c, (aa, bb) in (
                            (cv.ETA[m] if m == ss else 0, (nn, r)),
                            (cv.ETA[nn] if nn == r else 0, (m, ss)),
                            (-cv.ETA[m] if m == r else 0, (nn, ss)),
                            (-cv.ETA[nn] if nn == ss else 0, (m, r))):
                        if not eta_c:
                            continue
                        jr = self._j_word(aa, bb)
                        if jr is None:
                            continue
                        sign, jw = jr
                        rhs.append((f.of(eta_c * sign), jw))
                    put(x, y, rhs)
                elif x.kind == "P" and y.kind == "P":
                    put(x, y, swap)
                else:  # pragma: no cover - alphabet is closed
                    raise AssertionError("missing rule for %s·%s" % (x.name, y.name))
        return rules

    # -- element constructors ---------------------------------------------------

    def scalar(self, c):
        if isinstance(c, GRat):
            return self._lift(c)
        if isinstance(c, (int,)) or type(c).__name__ == "Fraction":
            return self.field.of(c)
        return c

    def coerce(self, x):
        if isinstance(x, AlgebraElement):
            if x.algebra is not self:
                raise ValueError("element belongs to a different algebra")
            return x
        if isinstance(x, str):
            return self.monomial((x,))
        if isinstance(x, tuple):
            return self.monomial(x)
        return self.unit().scale(x)

    def zero(self):
        return self._zero

    def unit(self):
        return self._one

    def monomial(self, word, coeff=1):
        for name in word:
            self.gen(name)
        return AlgebraElement(self, {tuple(word): self.scalar(coeff)})

    def element(self, terms, normalize=True):
        return AlgebraElement(
            self, {tuple(w): self.scalar(c) for w, c in terms.items()},
            normalize=normalize)

    # -- word utilities ----------------------------------------------------------

    def parity(self, word):
        p = 1
        for name in word:
            p *= self.gen(name).parity
        return p

    def parity_of(self, elem):
        """Parity of a homogeneous element; error if mixed."""
        ps = {self.parity(w) for w in elem.terms}
        if len(ps) > 1:
            raise ValueError("element is not homogeneous")
        return ps.pop() if ps else 1

    def multiply(self, a, b):
        return self.coerce(a) * self.coerce(b)

    def normal_form(self, a):
        return self.coerce(a).normal_form()
