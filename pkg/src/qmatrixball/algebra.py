"""Normal-form engine for the quantized polynomial *-algebra of rank n.

Generators are z[i,j] with 1 <= j <= i <= n (entries of a symmetric matrix)
and their adjoints zs[i,j].  A word is *normal* when all z letters precede
all zs letters (Wick order), the z part is weakly decreasing and the zs part
weakly increasing in the row-major order on index pairs.  The quadratic
straightening rules rewrite any word into the span of normal words:

* eleven z-z rules for the holomorphic subalgebra,
* their star conjugates for zs-zs pairs,
* eight cross rows moving a zs letter past a z letter, together with the
  star conjugates of the non-symmetric rows.

Confluence of the oriented system is not assumed; ``verify_confluence``
checks it by running independent reduction strategies to completion.
"""

from __future__ import annotations

from itertools import combinations_with_replacement, product
from math import comb

from .scalars import Coefficient, ONE, ZERO, integer, qpow

Z = 0
STAR = 1

Gen = tuple  # (kind, i, j)
Word = tuple  # tuple of Gen


class GeneratorIndexError(ValueError):
    """Raised for index pairs outside 1 <= j <= i <= n."""


class CompletenessError(RuntimeError):
    """Raised if a generator pair is covered by no straightening branch."""


def gen_z(i: int, j: int) -> Gen:
    return (Z, i, j)


def gen_star(i: int, j: int) -> Gen:
    return (STAR, i, j)


def star_gen(g: Gen) -> Gen:
    return (1 - g[0], g[1], g[2])


def star_word(w: Word) -> Word:
    return tuple(star_gen(g) for g in reversed(w))


def word_charge(w: Word) -> int:
    """Number of z letters minus number of zs letters."""
    return sum(1 if g[0] == Z else -1 for g in w)


def gen_str(g: Gen) -> str:
    return "%s[%d,%d]" % ("z" if g[0] == Z else "zs", g[1], g[2])


def word_str(w: Word) -> str:
    return "".join(gen_str(g) for g in w) if w else "1"


def word_key(w: Word):
    return (len(w), w)


class Element:
    """Finite linear combination of normal words with Q(s) coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: "PolAlgebra", terms: dict):
        self.ring = ring
        self.terms = terms

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            acc = out.get(w)
            s = c if acc is None else acc + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return Element(self.ring, out)

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Element(self.ring, {w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "Element":
        if isinstance(c, int):
            c = integer(c)
        if c.is_zero():
            return Element(self.ring, {})
        return Element(self.ring, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.ring.multiply(self, other)
        if isinstance(other, (Coefficient, int)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Coefficient, int)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("element powers need a nonnegative integer")
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.ring is other.ring
            and self.terms == other.terms
        )

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Largest word length with a nonzero coefficient (-1 for zero)."""
        return max((len(w) for w in self.terms), default=-1)

    def is_holomorphic(self) -> bool:
        return all(g[0] == Z for w in self.terms for g in w)

    def star(self) -> "Element":
        return self.ring.involution(self)

    def vacuum(self) -> Coefficient:
        return self.ring.vacuum_coefficient(self)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: word_key(kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            if not w:
                parts.append(str(c))
            elif c.is_one():
                parts.append(word_str(w))
            else:
                parts.append("%s * %s" % (c, word_str(w)))
        return " + ".join(parts)

    def __repr__(self):
        return "<Element n=%d: %s>" % (self.ring.n, self)

    def to_json_obj(self):
        return [
            {
                "word": [["z" if g[0] == Z else "zs", g[1], g[2]] for g in w],
                "coeff": str(c),
            }
            for w, c in self.sorted_terms()
        ]


class PolAlgebra:
    """The rank-n quantized *-algebra with its straightening tables."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("rank must be at least 1")
        self.n = n
        self.zgens = [(Z, i, j) for i in range(1, n + 1) for j in range(1, i + 1)]
        self.sgens = [star_gen(g) for g in self.zgens]
        self.gens = self.zgens + self.sgens
        self._scalars()
        self._pair = {}
        self._tag = {}
        for g in self.gens:
            for h in self.gens:
                rhs, tag = self._rule_for(g, h)
                self._pair[(g, h)] = rhs
                self._tag[(g, h)] = tag
        self._nf_cache = {"leftmost": {}, "rightmost": {}}

    def _scalars(self):
        self._q = qpow(1)
        self._q2 = qpow(2)
        self._q3 = qpow(3)
        self._q4 = qpow(4)
        self._e = qpow(-1) - qpow(1)          # q^-1 - q
        self._e2 = self._e * self._e
        self._p2 = ONE + self._q2             # 1 + q^2
        self._c22 = self._q2 - qpow(-2)       # q^2 - q^-2
        self._c11 = self._q - qpow(-1)        # q - q^-1

    # -- element constructors ------------------------------------------------

    def check_indices(self, i: int, j: int):
        if not (1 <= j <= i <= self.n):
            raise GeneratorIndexError(
                "generator indices must satisfy 1 <= j <= i <= n=%d, got (%d,%d)"
                % (self.n, i, j)
            )

    def z(self, i: int, j: int) -> Element:
        self.check_indices(i, j)
        return Element(self, {((Z, i, j),): ONE})

    def zs(self, i: int, j: int) -> Element:
        self.check_indices(i, j)
        return Element(self, {((STAR, i, j),): ONE})

    def one(self) -> Element:
        return Element(self, {(): ONE})

    def zero(self) -> Element:
        return Element(self, {})

    def scalar(self, c) -> Element:
        if isinstance(c, int):
            c = integer(c)
        return Element(self, {} if c.is_zero() else {(): c})

    def monomial(self, word, coeff=ONE) -> Element:
        """Element from a free word; straightened if not already normal."""
        word = tuple(word)
        for g in word:
            self.check_indices(g[1], g[2])
        return self.normal_form({word: coeff})

    # -- rule tables ----------------------------------------------------------

    def _rule_for(self, g: Gen, h: Gen):
        if g[0] == Z and h[0] == STAR:
            return None, "normal"
        if g[0] == Z and h[0] == Z:
            if (g[1], g[2]) >= (h[1], h[2]):
                return None, "normal"
            rhs, tag = self._zz_rule(g[1], g[2], h[1], h[2])
            return rhs, tag
        if g[0] == STAR and h[0] == STAR:
            if (g[1], g[2]) <= (h[1], h[2]):
                return None, "normal"
            rhs, tag = self._zz_rule(h[1], h[2], g[1], g[2])
            return [(c, star_word(w)) for c, w in rhs], tag.replace("zz", "ss")
        return self._cross_rule(g, h)

    def _zz_rule(self, ia, ja, ib, jb):
        """Rewrite z[ia,ja] z[ib,jb] with (ia,ja) < (ib,jb) row-major."""
        swap = ((Z, ib, jb), (Z, ia, ja))
        if ia == ja == jb and jb < ib:
            return [(self._q2, swap)], "zz1"
        if ja < ia and ia == ib == jb:
            return [(self._q2, swap)], "zz2"
        if ja < jb < ia and ia == ib:
            return [(self._q, swap)], "zz3"
        if ja == jb and ja < ia < ib:
            return [(self._q, swap)], "zz4"
        if jb < ja and ia < ib:
            return [(ONE, swap)], "zz5"
        if ia == ja and ib == jb and ia < ib:
            extra = ((Z, jb, ja), (Z, ib, ia))
            return [(ONE, swap), (self._q * self._c22, extra)], "zz6"
        if ia == ja and ja < jb < ib:
            extra = ((Z, jb, ja), (Z, ib, ia))
            return [(ONE, swap), (self._c22, extra)], "zz7"
        if ja < ia < ib and ib == jb:
            extra = ((Z, jb, ja), (Z, ib, ia))
            return [(ONE, swap), (self._c22, extra)], "zz8"
        if ja < ia < jb < ib:
            t1 = ((Z, jb, ia), (Z, ib, ja))
            t2 = ((Z, ib, ia), (Z, jb, ja))
            return [
                (ONE, swap),
                (self._q * self._c11, t1),
                (self._c11, t2),
            ], "zz9"
        if ja < jb < ia < ib:
            extra = ((Z, ia, jb), (Z, ib, ja))
            return [(ONE, swap), (self._c11, extra)], "zz10"
        if ja < ia and ia == jb and jb < ib:
            extra = ((Z, ia, jb), (Z, ib, ja))
            return [(self._q, swap), (self._c11, extra)], "zz11"
        raise CompletenessError(
            "no z-z rule for z[%d,%d] z[%d,%d]" % (ia, ja, ib, jb)
        )

    def _cross_primary(self, i, j, k, l):
        """Row of the cross table for zs[i,j] z[k,l], or None."""
        n = self.n
        e, e2, p2 = self._e, self._e2, self._p2
        q, q2, q3, q4 = self._q, self._q2, self._q3, self._q4

        def T(u1, u2, v1, v2):
            return ((Z, u1, u2), (STAR, v1, v2))

        if j != k and j != l and i != k and i != l:
            return "A", [(ONE, T(k, l, i, j))]
        if i == k and i > j and j > l:
            rhs = [(q, T(k, l, i, j))]
            rhs += [(-e, T(m, l, m, j)) for m in range(k + 1, n + 1)]
            return "B", rhs
        if i > k and k == j and j > l:
            rhs = [(q, T(k, l, i, j))]
            rhs += [(-(q * e), T(m, l, i, m)) for m in range(k + 1, i + 1)]
            rhs += [(-(q2 * e), T(m, l, m, i)) for m in range(i + 1, n + 1)]
            return "C", rhs
        if i > k and k > j and j == l:
            rhs = [(q, T(k, l, i, j))]
            rhs += [(-e, T(k, m, i, m)) for m in range(l + 1, k + 1)]
            rhs += [(-(q * e), T(m, k, i, m)) for m in range(k + 1, i + 1)]
            rhs += [(-(q2 * e), T(m, k, m, i)) for m in range(i + 1, n + 1)]
            return "D", rhs
        if i > j and j == k == l:
            rhs = [(q2, T(k, l, i, j))]
            rhs += [(-(p2 * e), T(m, k, i, m)) for m in range(l + 1, i + 1)]
            rhs += [(-(q * p2 * e), T(m, k, m, i)) for m in range(i + 1, n + 1)]
            return "E", rhs
        if i == j == k and k > l:
            rhs = [(q2, T(k, l, i, j))]
            rhs += [(-(p2 * e), T(m, l, m, i)) for m in range(k + 1, n + 1)]
            return "F", rhs
        if i == k and j == l and i > j:
            rhs = [(q2, T(i, j, i, j))]
            rhs += [(-(q * e), T(i, m, i, m)) for m in range(j + 1, i + 1)]
            rhs += [(-(q * e), T(m, j, m, j)) for m in range(i + 1, n + 1)]
            rhs += [(-(q3 * e), T(m, i, m, i)) for m in range(i + 1, n + 1)]
            rhs += [
                (e2, T(kp, lp, kp, lp))
                for kp in range(i + 1, n + 1)
                for lp in range(j + 1, kp)
            ]
            rhs += [(e2, T(m, m, m, m)) for m in range(i + 1, n + 1)]
            rhs.append((ONE - q2, ()))
            return "G", rhs
        if i == j == k == l:
            rhs = [(q4, T(i, i, i, i))]
            rhs += [(-(q * e * p2 * p2), T(m, i, m, i)) for m in range(i + 1, n + 1)]
            rhs += [(e2 * p2, T(m, m, m, m)) for m in range(i + 1, n + 1)]
            rhs += [
                (e2 * p2 * p2, T(kp, jp, kp, jp))
                for kp in range(i + 1, n + 1)
                for jp in range(i + 1, kp)
            ]
            rhs.append((ONE - q4, ()))
            return "H", rhs
        return None

    @staticmethod
    def _merge_rhs(rhs):
        acc = {}
        for c, w in rhs:
            cur = acc.get(w)
            s = c if cur is None else cur + c
            if s.is_zero():
                acc.pop(w, None)
            else:
                acc[w] = s
        return [(c, w) for w, c in acc.items()]

    def _cross_rule(self, g: Gen, h: Gen):
        i, j = g[1], g[2]
        k, l = h[1], h[2]
        direct = self._cross_primary(i, j, k, l)
        if direct is not None:
            row, rhs = direct
            return self._merge_rhs(rhs), "wick" + row
        prim = self._cross_primary(k, l, i, j)
        if prim is None:
            raise CompletenessError(
                "no cross rule for zs[%d,%d] z[%d,%d]" % (i, j, k, l)
            )
        row, rhs = prim
        if row in ("A", "G", "H"):
            raise CompletenessError(
                "symmetric cross row %s matched only in starred scan" % row
            )
        starred = [
            (c, ((Z, w[1][1], w[1][2]), (STAR, w[0][1], w[0][2])) if w else ())
            for c, w in rhs
        ]
        return self._merge_rhs(starred), "wick%ss" % row

    # -- classification -------------------------------------------------------

    def classify(self, a: Gen, b: Gen) -> str:
        """Name of the unique rule rewriting a*b, or "normal"."""
        return self._tag[(a, b)]

    def matching_branches(self, a: Gen, b: Gen):
        """All rule branches whose pattern matches the ordered pair a*b.

        Used by the completeness scan: a sound table has exactly one match
        for every out-of-order pair and none for pairs already in normal
        order.
        """
        out = []
        if a[0] == Z and b[0] == Z:
            if (a[1], a[2]) < (b[1], b[2]):
                out.append(self._zz_rule(a[1], a[2], b[1], b[2])[1])
        elif a[0] == STAR and b[0] == STAR:
            if (a[1], a[2]) > (b[1], b[2]):
                out.append(
                    self._zz_rule(b[1], b[2], a[1], a[2])[1].replace("zz", "ss")
                )
        elif a[0] == STAR and b[0] == Z:
            direct = self._cross_primary(a[1], a[2], b[1], b[2])
            if direct is not None:
                out.append("wick" + direct[0])
            swapped = self._cross_primary(b[1], b[2], a[1], a[2])
            if swapped is not None and swapped[0] not in ("A", "G", "H"):
                out.append("wick%ss" % swapped[0])
        return out

    def derive_star_rules(self):
        """Star conjugates of the holomorphic rules, as (lhs, rhs, tag)."""
        out = []
        for a in self.sgens:
            for b in self.sgens:
                rhs = self._pair[(a, b)]
                if rhs is not None:
                    out.append(((a, b), list(rhs), self._tag[(a, b)]))
        return out

    def rule_instances(self):
        """Every oriented rule instance as (lhs word, rhs Element)."""
        for g in self.gens:
            for h in self.gens:
                rhs = self._pair[(g, h)]
                if rhs is None:
                    continue
                elem = Element(self, {w: c for c, w in rhs})
                yield (g, h), elem, self._tag[(g, h)]

    # -- normal form ------------------------------------------------------------

    def _violation(self, w: Word, strategy: str):
        rng = range(len(w) - 1)
        if strategy == "rightmost":
            rng = range(len(w) - 2, -1, -1)
        for p in rng:
            if self._pair[(w[p], w[p + 1])] is not None:
                return p
        return None

    def _nf_word(self, word: Word, strategy: str) -> dict:
        cache = self._nf_cache[strategy]
        hit = cache.get(word)
        if hit is not None:
            return hit
        stack = [word]
        while stack:
            w = stack[-1]
            if w in cache:
                stack.pop()
                continue
            p = self._violation(w, strategy)
            if p is None:
                cache[w] = {w: ONE}
                stack.pop()
                continue
            rhs = self._pair[(w[p], w[p + 1])]
            head, tail = w[:p], w[p + 2:]
            children = [head + repl + tail for _, repl in rhs]
            missing = [ch for ch in children if ch not in cache]
            if missing:
                stack.extend(missing)
                continue
            res = {}
            for (c, _), ch in zip(rhs, children):
                for w2, c2 in cache[ch].items():
                    acc = res.get(w2)
                    s = c * c2 if acc is None else acc + c * c2
                    if s.is_zero():
                        res.pop(w2, None)
                    else:
                        res[w2] = s
            cache[w] = res
            stack.pop()
        return cache[word]

    def normal_form(self, terms, strategy: str = "leftmost") -> Element:
        """Straighten a free linear combination {word: coefficient}."""
        if isinstance(terms, Element):
            terms = terms.terms
        out = {}
        for word, c in terms.items():
            if isinstance(c, int):
                c = integer(c)
            if c.is_zero():
                continue
            for w2, c2 in self._nf_word(tuple(word), strategy).items():
                acc = out.get(w2)
                s = c * c2 if acc is None else acc + c * c2
                if s.is_zero():
                    out.pop(w2, None)
                else:
                    out[w2] = s
        return Element(self, out)

    def multiply(self, a: Element, b: Element) -> Element:
        out = {}
        for wa, ca in a.terms.items():
            for wb, cb in b.terms.items():
                c = ca * cb
                for w2, c2 in self._nf_word(wa + wb, "leftmost").items():
                    acc = out.get(w2)
                    s = c * c2 if acc is None else acc + c * c2
                    if s.is_zero():
                        out.pop(w2, None)
                    else:
                        out[w2] = s
        return Element(self, out)

    def involution(self, e: Element) -> Element:
        """The *-operation; normal words map to normal words letterwise."""
        return Element(self, {star_word(w): c for w, c in e.terms.items()})

    def vacuum_coefficient(self, e: Element) -> Coefficient:
        return e.terms.get((), ZERO)

    # -- bases -------------------------------------------------------------------

    def holomorphic_basis(self, d: int):
        """Normal z-words of degree d, sorted graded-lexicographically."""
        if d < 0:
            return []
        words = [
            tuple(sorted(combo, reverse=True))
            for combo in combinations_with_replacement(self.zgens, d)
        ]
        words.sort()
        return words

    def normal_words(self, max_degree: int, include_stars: bool = True):
        """All normal words of total degree <= max_degree."""
        out = []
        for d in range(max_degree + 1):
            for dz in range(d, -1, -1):
                ds = d - dz
                if ds and not include_stars:
                    continue
                zparts = self.holomorphic_basis(dz)
                sparts = [
                    tuple(sorted(combo))
                    for combo in combinations_with_replacement(self.sgens, ds)
                ]
                for zp in zparts:
                    for sp in sparts:
                        out.append(zp + sp)
        return out

    def graded_dimension(self, d: int) -> int:
        """Number of holomorphic normal words of degree d."""
        return len(self.holomorphic_basis(d))

    def flat_dimension(self, d: int) -> int:
        """Commutative benchmark: monomials of degree d in n(n+1)/2 variables."""
        N = self.n * (self.n + 1) // 2
        return comb(N + d - 1, d) if d > 0 else 1

    # -- verification ---------------------------------------------------------------

    def verify_completeness(self) -> dict:
        """Exhaustive scan: each ordered pair is normal or matches one branch."""
        report = {"suite": "completeness", "cases": 0, "failures": []}
        for a in self.gens:
            for b in self.gens:
                report["cases"] += 1
                branches = self.matching_branches(a, b)
                tag = self._tag[(a, b)]
                ok = (tag == "normal" and not branches) or (
                    len(branches) == 1 and branches[0] == tag
                )
                if not ok:
                    report["failures"].append(
                        {
                            "input": "%s %s" % (gen_str(a), gen_str(b)),
                            "lhs": tag,
                            "rhs": ",".join(branches),
                        }
                    )
        return report

    def verify_confluence(self, max_len: int) -> dict:
        """Compare leftmost and rightmost reductions on all short words."""
        report = {"suite": "confluence", "cases": 0, "failures": []}
        for length in range(1, max_len + 1):
            for word in product(self.gens, repeat=length):
                report["cases"] += 1
                left = self._nf_word(word, "leftmost")
                right = self._nf_word(word, "rightmost")
                if left != right:
                    report["failures"].append(
                        {
                            "input": word_str(word),
                            "lhs": str(Element(self, dict(left))),
                            "rhs": str(Element(self, dict(right))),
                        }
                    )
        return report

    # -- randomized inputs for property batteries ----------------------------------

    def random_element(self, rng, max_degree: int = 2, nterms: int = 3,
                       include_stars: bool = True) -> Element:
        """Small random element with integer coefficients in [-3, 3]."""
        words = self.normal_words(max_degree, include_stars)
        out = self.zero()
        for _ in range(nterms):
            w = words[rng.randrange(len(words))]
            c = 0
            while c == 0:
                c = rng.randint(-3, 3)
            out = out + Element(self, {w: integer(c)})
        return out
