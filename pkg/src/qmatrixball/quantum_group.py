"""The quantized symplectic symmetry acting on the matrix-ball algebra.

The Hopf algebra has generators E_i, F_i, K_i^{+-1} (i = 1..n) over the
type-C Cartan matrix (last off-diagonal entry -2, symmetrizers d =
(1,...,1,2)).  Generators act on the algebra generators through fixed
tables; the action extends to products through the coproduct

    E(fg) = (Ef)g + (Kf)(Eg),   F(fg) = (Ff)(K^-1 g) + f(Fg),
    K(fg) = (Kf)(Kg),

to the unit through the counit, and to adjoint generators through
xi(f*) = (S(xi)* f)*.  Nothing is assumed: the defining relations of the
symmetry algebra and the preservation of the straightening ideal are both
verified operator by operator in exact arithmetic.
"""

from __future__ import annotations

from .algebra import Element, PolAlgebra, STAR, Z, gen_str, star_word, word_str
from .scalars import Coefficient, ONE, ZERO, integer, qpow, spow

Symbol = tuple  # (kind in {"E","F","K","Ki"}, index)


def cartan_matrix(n: int):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = -1
            a[i + 1][i] = -1
    if n >= 2:
        a[n - 2][n - 1] = -2
    return a


class CartanData:
    """Type-C Cartan matrix of rank n with its symmetrizers."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("the symmetry algebra needs rank n >= 2")
        self.n = n
        self.a = cartan_matrix(n)
        self.d = [1] * (n - 1) + [2]
        for i in range(n):
            for j in range(n):
                assert self.d[i] * self.a[i][j] == self.d[j] * self.a[j][i]


def _sym_str(sym: Symbol) -> str:
    kind, i = sym
    return {"E": "E[%d]", "F": "F[%d]", "K": "K[%d]", "Ki": "Kinv[%d]"}[kind] % i


class UqExpr:
    """Linear combination of words in the symmetry generators."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = terms or {}

    @staticmethod
    def symbol(kind: str, i: int) -> "UqExpr":
        return UqExpr({(((kind, i)),): ONE})

    @staticmethod
    def E(i: int) -> "UqExpr":
        return UqExpr({((("E", i)),): ONE})

    @staticmethod
    def F(i: int) -> "UqExpr":
        return UqExpr({((("F", i)),): ONE})

    @staticmethod
    def K(i: int) -> "UqExpr":
        return UqExpr({((("K", i)),): ONE})

    @staticmethod
    def Kinv(i: int) -> "UqExpr":
        return UqExpr({((("Ki", i)),): ONE})

    @staticmethod
    def one() -> "UqExpr":
        return UqExpr({(): ONE})

    @staticmethod
    def scalar(c: Coefficient) -> "UqExpr":
        return UqExpr({} if c.is_zero() else {(): c})

    def __add__(self, other):
        if not isinstance(other, UqExpr):
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            acc = out.get(w)
            s = c if acc is None else acc + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return UqExpr(out)

    def __sub__(self, other):
        if not isinstance(other, UqExpr):
            return NotImplemented
        return self + other.scale(integer(-1))

    def __neg__(self):
        return self.scale(integer(-1))

    def scale(self, c) -> "UqExpr":
        if isinstance(c, int):
            c = integer(c)
        if c.is_zero():
            return UqExpr({})
        return UqExpr({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (Coefficient, int)):
            return self.scale(other)
        if not isinstance(other, UqExpr):
            return NotImplemented
        out = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                w = wa + wb
                c = ca * cb
                acc = out.get(w)
                s = c if acc is None else acc + c
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        return UqExpr(out)

    def __rmul__(self, other):
        if isinstance(other, (Coefficient, int)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("symmetry words need nonnegative integer powers")
        out = UqExpr.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, UqExpr) and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            ws = "".join(_sym_str(s) for s in w)
            if not w:
                parts.append(str(c))
            elif c.is_one():
                parts.append(ws)
            else:
                parts.append("%s * %s" % (c, ws))
        return " + ".join(parts)

    def __repr__(self):
        return "<UqExpr %s>" % self


def gauss_binomial(m: int, r: int, d: int) -> Coefficient:
    """Symmetric q-binomial coefficient in the variable q^d."""
    if r < 0 or r > m:
        return ZERO

    def qint(k: int) -> Coefficient:
        return (qpow(d * k) - qpow(-d * k)) / (qpow(d) - qpow(-d))

    out = ONE
    for t in range(1, r + 1):
        out = out * qint(m - r + t) / qint(t)
    return out


class HopfAction:
    """The symmetry action on a fixed rank-n matrix-ball algebra."""

    def __init__(self, ring: PolAlgebra):
        self.ring = ring
        self.cartan = CartanData(ring.n)
        n = ring.n
        self._weights = {g: self._letter_weight(g) for g in ring.gens}
        self._letters = {}
        for i in range(1, n + 1):
            for kind in ("E", "F", "K", "Ki"):
                sym = (kind, i)
                for g in ring.gens:
                    self._letters[(sym, g)] = self._letter_action(sym, g)
        self._word_cache = {}

    # -- weights ------------------------------------------------------------

    def _letter_weight(self, g):
        """Integer vector (w_1..w_n) with K_k g = q^{w_k} g."""
        kind, i, j = g
        n = self.ring.n
        w = []
        for k in range(1, n):
            if i == j == k:
                w.append(2)
            elif i == j == k + 1:
                w.append(-2)
            elif (i == k and j < i) or (i - 1 > k and k == j):
                w.append(1)
            elif (i - 1 == k and j < k) or (i > k + 1 and j == k + 1):
                w.append(-1)
            else:
                w.append(0)
        if i == j == n:
            w.append(4)
        elif i == n and j < n:
            w.append(2)
        else:
            w.append(0)
        if kind == STAR:
            w = [-x for x in w]
        return tuple(w)

    def weight(self, word) -> tuple:
        """Additive weight vector of a word (adjoint letters negated)."""
        n = self.ring.n
        out = [0] * n
        for g in word:
            wg = self._weights[g]
            for k in range(n):
                out[k] += wg[k]
        return tuple(out)

    # -- single-letter actions ------------------------------------------------

    def _z_letter_action(self, sym: Symbol, g) -> Element:
        ring = self.ring
        n = ring.n
        kind, k = sym
        _, i, j = g
        if kind in ("K", "Ki"):
            e = self._weights[g][k - 1]
            return ring.monomial((g,), qpow(e if kind == "K" else -e))
        if kind == "E":
            if k < n:
                pre = spow(-1)
                if i == j == k + 1:
                    return ring.z(i, j - 1).scale(pre * (qpow(1) + qpow(-1)))
                if i == k + 1 and i > j:
                    return ring.z(i - 1, j).scale(pre)
                if i > k + 1 and j == k + 1:
                    return ring.z(i, j - 1).scale(pre)
                return ring.zero()
            if i == n:
                return (ring.z(n, n) * ring.z(i, j)).scale(-qpow(1))
            return (ring.z(n, i) * ring.z(n, j)).scale(integer(-1))
        if kind == "F":
            if k < n:
                pre = spow(1)
                if i == j == k:
                    return ring.z(i + 1, j).scale(pre * (qpow(1) + qpow(-1)))
                if i == k and i > j:
                    return ring.z(i + 1, j).scale(pre)
                if i > k and j == k:
                    return ring.z(i, j + 1).scale(pre)
                return ring.zero()
            if i == j == n:
                return ring.scalar(qpow(1))
            return ring.zero()
        raise ValueError("unknown symbol kind %r" % (kind,))

    def _letter_action(self, sym: Symbol, g) -> Element:
        if g[0] == Z:
            return self._z_letter_action(sym, g)
        # xi(f*) = (S(xi)* f)* reduces the adjoint letter to the plain one
        zg = (Z, g[1], g[2])
        out = self.ring.zero()
        for word, c in self.antipode_star(UqExpr({(sym,): ONE})).terms.items():
            cur = self.ring.monomial((zg,))
            for s in reversed(word):
                cur = self._act_symbol(s, cur)
            out = out + cur.star().scale(c)
        return out

    def act_generator(self, sym: Symbol, g) -> Element:
        """Action of one symmetry generator on one algebra generator."""
        return self._letters[(sym, g)]

    # -- coproduct extension ----------------------------------------------------

    def _act_symbol_word(self, sym: Symbol, word) -> Element:
        key = (sym, word)
        hit = self._word_cache.get(key)
        if hit is not None:
            return hit
        ring = self.ring
        kind, i = sym
        if kind in ("K", "Ki"):
            e = sum(self._weights[g][i - 1] for g in word)
            res = Element(ring, {word: qpow(e if kind == "K" else -e)})
        elif not word:
            res = ring.zero()
        else:
            x, rest = word[0], word[1:]
            rest_el = Element(ring, {rest: ONE})
            if kind == "E":
                t1 = ring.multiply(self._letters[(sym, x)], rest_el)
                kx = qpow(self._weights[x][i - 1])
                t2 = ring.multiply(
                    Element(ring, {(x,): kx}), self._act_symbol_word(sym, rest)
                )
            else:
                wrest = sum(self._weights[g][i - 1] for g in rest)
                t1 = ring.multiply(self._letters[(sym, x)], rest_el).scale(
                    qpow(-wrest)
                )
                t2 = ring.multiply(
                    Element(ring, {(x,): ONE}), self._act_symbol_word(sym, rest)
                )
            res = t1 + t2
        self._word_cache[key] = res
        return res

    def _act_symbol(self, sym: Symbol, e: Element) -> Element:
        out = self.ring.zero()
        for w, c in e.terms.items():
            out = out + self._act_symbol_word(sym, w).scale(c)
        return out

    def act(self, xi: UqExpr, e: Element) -> Element:
        """Module-algebra action of a symmetry expression on an element."""
        out = self.ring.zero()
        for word, c in xi.terms.items():
            cur = e
            for sym in reversed(word):
                cur = self._act_symbol(sym, cur)
            out = out + cur.scale(c)
        return out

    def counit(self, xi: UqExpr) -> Coefficient:
        out = ZERO
        for word, c in xi.terms.items():
            if all(s[0] in ("K", "Ki") for s in word):
                out = out + c
        return out

    def antipode_star(self, xi: UqExpr) -> UqExpr:
        """S(xi)*, computed symbolically; a homomorphism on words."""
        n = self.cartan.n
        d = self.cartan.d
        out = UqExpr({})
        for word, c in xi.terms.items():
            coeff = c
            syms = []
            for kind, i in word:
                if kind == "K":
                    syms.append(("Ki", i))
                elif kind == "Ki":
                    syms.append(("K", i))
                elif kind == "E":
                    # S(E_i)* = -(E_i* K_i^-1) = sign q^{-2 d_i} F_i
                    sign = integer(1) if i == n else integer(-1)
                    coeff = coeff * sign * qpow(-2 * d[i - 1])
                    syms.append(("F", i))
                else:
                    # S(F_i)* = -(K_i F_i*) = sign q^{+2 d_i} E_i
                    sign = integer(1) if i == n else integer(-1)
                    coeff = coeff * sign * qpow(2 * d[i - 1])
                    syms.append(("E", i))
            w = tuple(syms)
            acc = out.terms.get(w)
            s = coeff if acc is None else acc + coeff
            if s.is_zero():
                out.terms.pop(w, None)
            else:
                out.terms[w] = s
        return out

    # -- defining relations -------------------------------------------------------

    def generator_symbols(self):
        n = self.cartan.n
        out = []
        for i in range(1, n + 1):
            out += [("E", i), ("F", i), ("K", i), ("Ki", i)]
        return out

    def serre_relations(self):
        """Quantized Serre relations, as (expression, name) with value zero."""
        n = self.cartan.n
        a = self.cartan.a
        d = self.cartan.d
        rels = []
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                m = 1 - a[i - 1][j - 1]
                for base, tag in ((UqExpr.E, "E"), (UqExpr.F, "F")):
                    expr = UqExpr({})
                    for r in range(m + 1):
                        term = (
                            base(i) ** (m - r) * base(j) * base(i) ** r
                        ).scale(gauss_binomial(m, r, d[i - 1]) * integer((-1) ** r))
                        expr = expr + term
                    rels.append((expr, "serre-%s(%d,%d)" % (tag, i, j)))
        return rels

    def defining_relations(self):
        """All defining relations as (lhs, rhs, name) pairs of expressions."""
        n = self.cartan.n
        a = self.cartan.a
        d = self.cartan.d
        E, F, K, Ki = UqExpr.E, UqExpr.F, UqExpr.K, UqExpr.Kinv
        rels = []
        for i in range(1, n + 1):
            rels.append((K(i) * Ki(i), UqExpr.one(), "K(%d)Kinv(%d)" % (i, i)))
            rels.append((Ki(i) * K(i), UqExpr.one(), "Kinv(%d)K(%d)" % (i, i)))
            for j in range(i + 1, n + 1):
                rels.append((K(i) * K(j), K(j) * K(i), "K(%d)K(%d)" % (i, j)))
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                c = qpow(d[i - 1] * a[i - 1][j - 1])
                rels.append(
                    (K(i) * E(j), (E(j) * K(i)).scale(c), "K(%d)E(%d)" % (i, j))
                )
                rels.append(
                    (
                        K(i) * F(j),
                        (F(j) * K(i)).scale(ONE / c),
                        "K(%d)F(%d)" % (i, j),
                    )
                )
                lhs = E(i) * F(j) - F(j) * E(i)
                if i == j:
                    den = qpow(d[i - 1]) - qpow(-d[i - 1])
                    rhs = (K(i) - Ki(i)).scale(ONE / den)
                else:
                    rhs = UqExpr({})
                rels.append((lhs, rhs, "[E(%d),F(%d)]" % (i, j)))
        for expr, name in self.serre_relations():
            rels.append((expr, UqExpr({}), name))
        return rels

    # -- verification suites ----------------------------------------------------------

    def verify_uqg_relations(self, max_degree: int) -> dict:
        """Defining relations as operator identities on all short normal words."""
        report = {"suite": "hopf-relations", "cases": 0, "failures": []}
        words = self.ring.normal_words(max_degree)
        for lhs, rhs, name in self.defining_relations():
            for w in words:
                report["cases"] += 1
                el = Element(self.ring, {w: ONE})
                got = self.act(lhs, el)
                want = self.act(rhs, el)
                if got != want:
                    report["failures"].append(
                        {
                            "input": "%s on %s" % (name, word_str(w)),
                            "lhs": str(got),
                            "rhs": str(want),
                        }
                    )
        return report

    def verify_module_algebra(self) -> dict:
        """Every generator kills every straightening-rule difference."""
        report = {"suite": "module-algebra", "cases": 0, "failures": []}
        instances = list(self.ring.rule_instances())
        for sym in self.generator_symbols():
            for (g, h), rhs_el, tag in instances:
                report["cases"] += 1
                lhs_act = self._act_symbol_word(sym, (g, h))
                rhs_act = self._act_symbol(sym, rhs_el)
                if lhs_act != rhs_act:
                    report["failures"].append(
                        {
                            "input": "%s on rule %s at %s %s"
                            % (_sym_str(sym), tag, gen_str(g), gen_str(h)),
                            "lhs": str(lhs_act),
                            "rhs": str(rhs_act),
                        }
                    )
            report["cases"] += 1
            got = self.act(UqExpr({(sym,): ONE}), self.ring.one())
            want = self.ring.scalar(ONE if sym[0] in ("K", "Ki") else ZERO)
            if got != want:
                report["failures"].append(
                    {
                        "input": "%s on 1" % _sym_str(sym),
                        "lhs": str(got),
                        "rhs": str(want),
                    }
                )
        return report

    def verify_star_compatibility(self, seed: int, count: int,
                                  max_degree: int = 2) -> dict:
        """involution(act(xi, f)) == act(S(xi)*, involution(f)) on a battery."""
        import random

        report = {"suite": "star-compatibility", "cases": 0, "failures": []}
        rng = random.Random(seed)
        battery = [
            self.ring.random_element(rng, max_degree=max_degree)
            for _ in range(count)
        ]
        for sym in self.generator_symbols():
            xi = UqExpr({(sym,): ONE})
            xi_star = self.antipode_star(xi)
            for f in battery:
                report["cases"] += 1
                lhs = self.act(xi, f).star()
                rhs = self.act(xi_star, f.star())
                if lhs != rhs:
                    report["failures"].append(
                        {
                            "input": "%s on %s" % (_sym_str(sym), f),
                            "lhs": str(lhs),
                            "rhs": str(rhs),
                        }
                    )
        return report
