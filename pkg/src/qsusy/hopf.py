"""Coproduct, antipode and counit tables with executable axiom checkers.

The coproduct is extended to words as an algebra homomorphism, the antipode
anti-multiplicatively, the counit multiplicatively.  All axiom checks reduce
both sides to normal form and compare canonically; a failing check carries
the nonzero difference as a witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .algebra import AlgebraElement, SusyAlgebra


@dataclass
class CheckOutcome:
    check_id: str
    passed: bool
    witness: str = ""


@dataclass
class SemiHopfResult:
    element: str
    classification: str          # "odd-type" | "even-type" | "neither"
    odd_condition: bool          # Eq m(id x id)Delta(a) = eps(a) I
    even_condition: bool         # both antipode orders collapse to eps(a) I
    witness: str = ""


class TensorElement:
    """Multi-leg tensor of algebra words with Scalar weights."""

    __slots__ = ("algebra", "legs", "terms")

    def __init__(self, algebra, legs, terms, normalize=True):
        self.algebra = algebra
        self.legs = legs
        if normalize:
            terms = self._reduce(terms)
        self.terms = terms

    def _reduce(self, terms):
        red = self.algebra.rewrite.reduce_terms
        out = {}
        for words, c in terms.items():
            factors = [red({w: self.algebra.field.one()}) for w in words]
            for combo in itertools.product(*(f.items() for f in factors)):
                key = tuple(w for w, _ in combo)
                coeff = c
                for _, cc in combo:
                    coeff = coeff * cc
                acc = out.get(key)
                acc = coeff if acc is None else acc + coeff
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
        return out

    def __add__(self, other):
        assert self.legs == other.legs
        terms = dict(self.terms)
        for k, c in other.terms.items():
            acc = terms.get(k)
            acc = c if acc is None else acc + c
            if acc:
                terms[k] = acc
            elif k in terms:
                del terms[k]
        return TensorElement(self.algebra, self.legs, terms, normalize=False)

    def __sub__(self, other):
        return self + other.scale(-self.algebra.field.one())

    def scale(self, c):
        if not c:
            return TensorElement(self.algebra, self.legs, {}, normalize=False)
        return TensorElement(self.algebra, self.legs,
                             {k: c * v for k, v in self.terms.items()},
                             normalize=False)

    def __mul__(self, other):
        assert self.legs == other.legs
        terms = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(k1[i] + k2[i] for i in range(self.legs))
                c = c1 * c2
                acc = terms.get(key)
                terms[key] = c if acc is None else acc + c
        return TensorElement(self.algebra, self.legs, terms)

    def __eq__(self, other):
        if isinstance(other, TensorElement):
            return self.legs == other.legs and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.legs, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for words, c in self.sorted_terms():
            leg = " @ ".join("*".join(w) if w else "Id" for w in words)
            cs = repr(c)
            parts.append(leg if cs == "1" else
                         ("-" + leg if cs == "-1" else "%s*(%s)" % (cs, leg)))
        return " + ".join(parts).replace("+ -", "- ")


class StructureMaps:
    """Per-generator Delta, S, eps tables plus their extensions to words."""

    def __init__(self, algebra: SusyAlgebra):
        self.algebra = algebra
        f = algebra.field
        one = f.one()
        qr = f.q_power(2)
        self.delta_table = {}
        self.antipode_table = {}
        self.counit_table = {}
        for g in algebra.generators.values():
            n = g.name
            if g.kind in ("P", "J", "Z", "Zs"):
                delta = {((n,), ()): one, ((), (n,)): one}
                anti = {(n,): -one}
                eps = f.zero()
            elif g.kind in ("Q", "Qb"):
                delta = {((n,), ()): one, (("Jg",), (n,)): one}
                anti = {(n,): -one}
                eps = f.zero()
            elif g.kind == "E":
                delta = {((n,), ("Kinv",)): one, (("K",), (n,)): one}
                anti = {(n,): -(one / qr)}
                eps = f.zero()
            elif g.kind == "F":
                delta = {((n,), ("Kinv",)): one, (("K",), (n,)): one}
                anti = {(n,): -qr}
                eps = f.zero()
            elif g.kind == "K":
                delta = {(("K",), ("K",)): one}
                anti = {("Kinv",): one}
                eps = one
            elif g.kind == "Kinv":
                delta = {(("Kinv",), ("Kinv",)): one}
                anti = {("K",): one}
                eps = one
            elif g.kind == "Jg":
                delta = {(("Jg",), ("Jg",)): one}
                anti = {("Jg",): one}
                eps = one
            else:  # pragma: no cover
                raise AssertionError(g.kind)
            self.delta_table[n] = TensorElement(algebra, 2, delta,
                                                normalize=False)
            self.antipode_table[n] = AlgebraElement(algebra, anti,
                                                    normalize=False)
            self.counit_table[n] = eps

    # -- the three maps, extended to arbitrary elements ------------------------

    def coproduct(self, a):
        a = self.algebra.coerce(a)
        unit = TensorElement(self.algebra, 2,
                             {((), ()): self.algebra.field.one()},
                             normalize=False)
        out = TensorElement(self.algebra, 2, {}, normalize=False)
        for word, c in a.terms.items():
            t = unit
            for name in word:
                t = t * self.delta_table[name]
            out = out + t.scale(c)
        return out

    def antipode(self, a):
        a = self.algebra.coerce(a)
        out = self.algebra.zero()
        for word, c in a.terms.items():
            t = self.algebra.unit()
            for name in reversed(word):
                t = t * self.antipode_table[name]
            out = out + t.scale(c)
        return out

    def counit(self, a):
        a = self.algebra.coerce(a)
        out = self.algebra.field.zero()
        for word, c in a.terms.items():
            v = c
            for name in word:
                v = v * self.counit_table[name]
                if not v:
                    break
            out = out + v
        return out

    # -- tensor utilities -------------------------------------------------------

    def delta_on_leg(self, t: TensorElement, leg: int) -> TensorElement:
        out = {}
        for words, c in t.terms.items():
            dt = self.coproduct(self.algebra.monomial(words[leg]))
            for (w1, w2), c2 in dt.terms.items():
                key = words[:leg] + (w1, w2) + words[leg + 1:]
                v = c * c2
                acc = out.get(key)
                out[key] = v if acc is None else acc + v
        return TensorElement(self.algebra, t.legs + 1, out, normalize=False)

    def counit_on_leg(self, t: TensorElement, leg: int):
        out = {}
        for words, c in t.terms.items():
            v = c
            for name in words[leg]:
                v = v * self.counit_table[name]
                if not v:
                    break
            if not v:
                continue
            key = words[:leg] + words[leg + 1:]
            acc = out.get(key)
            acc = v if acc is None else acc + v
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
        if t.legs == 2:
            return AlgebraElement(self.algebra,
                                  {k[0]: c for k, c in out.items()},
                                  normalize=False)
        return TensorElement(self.algebra, t.legs - 1, out, normalize=False)

    def multiply_legs(self, t: TensorElement, pre=None):
        """m(pre_1 x pre_2 x ...) applied to a tensor; pre maps leg index to a
        word->AlgebraElement map (e.g. the antipode), identity if absent."""
        out = self.algebra.zero()
        for words, c in t.terms.items():
            prod = self.algebra.unit()
            for i, w in enumerate(words):
                fn = pre.get(i) if pre else None
                factor = fn(w) if fn else self.algebra.monomial(w)
                prod = prod * factor
            out = out + prod.scale(c)
        return out

    # -- axiom checks -------------------------------------------------------------

    def check_bialgebra_axioms(self, name) -> list[CheckOutcome]:
        g = self.algebra.monomial((name,))
        d = self.coproduct(g)
        left = self.delta_on_leg(d, 0)
        right = self.delta_on_leg(d, 1)
        co = left - right
        out = [CheckOutcome("coassociativity[%s]" % name, co.is_zero(),
                            "" if co.is_zero() else repr(co))]
        lhs1 = self.counit_on_leg(d, 1) - g
        lhs2 = self.counit_on_leg(d, 0) - g
        ok = lhs1.is_zero() and lhs2.is_zero()
        out.append(CheckOutcome(
            "counit-axiom[%s]" % name, ok,
            "" if ok else "(id x eps): %r / (eps x id): %r" % (lhs1, lhs2)))
        return out

    def check_semi_hopf(self, a) -> SemiHopfResult:
        a = self.algebra.coerce(a)
        label = repr(a)
        d = self.coproduct(a)
        target = self.algebra.unit().scale(self.counit(a))
        t_odd = self.multiply_legs(d) - target
        s_word = lambda w: self.antipode(self.algebra.monomial(w))
        t_even1 = self.multiply_legs(d, pre={0: s_word}) - target
        t_even2 = self.multiply_legs(d, pre={1: s_word}) - target
        odd_ok = t_odd.is_zero()
        even_ok = t_even1.is_zero() and t_even2.is_zero()
        # elements satisfying the Hopf antipode law are filed as even-type;
        # odd-type is reserved for the genuinely non-Hopf sector (see Def 3's
        # incompatibility claim -- group-likes satisfy both conditions)
        if even_ok:
            cls = "even-type"
        elif odd_ok:
            cls = "odd-type"
        else:
            cls = "neither"
        witness = ""
        if cls == "neither":
            witness = "m(id x id)Delta - eps*I = %r; m(S x id)Delta - eps*I = %r" \
                      % (t_odd, t_even1)
        return SemiHopfResult(label, cls, odd_ok, even_ok, witness)

    def adjoint_action(self, x, y) -> AlgebraElement:
        x = self.algebra.coerce(x)
        y = self.algebra.coerce(y)
        out = self.algebra.zero()
        for (w1, w2), c in self.coproduct(x).terms.items():
            term = self.algebra.monomial(w1) * y * \
                self.antipode(self.algebra.monomial(w2))
            out = out + term.scale(c)
        return out
