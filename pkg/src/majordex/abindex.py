"""The noncommutative ring Z<a,b>, its cd-subring, and the maj-weight maps.

Words over {a,b} are stored as a length plus a bit sequence (a=0, b=1), so
the map theta -- which sends a word to q raised to the sum of the 1-based
positions of its b letters -- is a cheap weighted scan.  The cd-side uses
letter strings over {c,d}, where c stands for a+b and d for ab+ba.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .qarith import QPoly, QTPoly


class AbWord:
    """A word over {a, b}; positions are 1-based, the empty word is the unit."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int):
        if n < 0:
            raise ValueError("word length must be >= 0")
        if bits >> n:
            raise ValueError("bits outside word length")
        self.n = n
        self.bits = bits

    @classmethod
    def from_string(cls, s: str) -> "AbWord":
        if s == "1":
            return cls(0, 0)
        bits = 0
        for i, ch in enumerate(s):
            if ch == "b":
                bits |= 1 << i
            elif ch != "a":
                raise ValueError(f"letter {ch!r} is not in {{a,b}}")
        return cls(len(s), bits)

    @classmethod
    def empty(cls) -> "AbWord":
        return cls(0, 0)

    def letters(self) -> str:
        return "".join("b" if self.bits >> i & 1 else "a" for i in range(self.n))

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AbWord) and self.n == other.n and self.bits == other.bits
        )

    def __hash__(self):
        return hash((self.n, self.bits))

    def __lt__(self, other: "AbWord") -> bool:
        return (self.n, self.letters()) < (other.n, other.letters())

    def concat(self, other: "AbWord") -> "AbWord":
        return AbWord(self.n + other.n, self.bits | (other.bits << self.n))

    def reversed(self) -> "AbWord":
        bits = 0
        for i in range(self.n):
            if self.bits >> i & 1:
                bits |= 1 << (self.n - 1 - i)
        return AbWord(self.n, bits)

    def b_positions(self) -> Iterator[int]:
        """1-based positions of the b letters, left to right."""
        for i in range(self.n):
            if self.bits >> i & 1:
                yield i + 1

    def count_b(self) -> int:
        return bin(self.bits).count("1")

    def __str__(self) -> str:
        return self.letters() if self.n else "1"

    def __repr__(self) -> str:
        return f"AbWord({str(self)!r})"


class AbPoly:
    """Integer linear combination of ab-words; no zero terms are stored."""

    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[AbWord, int] | None = None):
        t = {}
        if terms:
            for w, c in terms.items():
                if not isinstance(w, AbWord):
                    raise TypeError("AbPoly keys must be AbWord")
                if c:
                    t[w] = c
        self._t = t

    @classmethod
    def zero(cls) -> "AbPoly":
        return cls()

    @classmethod
    def one(cls) -> "AbPoly":
        return cls({AbWord.empty(): 1})

    @classmethod
    def from_word(cls, w: AbWord, coeff: int = 1) -> "AbPoly":
        return cls({w: coeff})

    def items(self):
        return self._t.items()

    def coeff(self, w: AbWord) -> int:
        return self._t.get(w, 0)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def is_homogeneous(self) -> bool:
        degs = {w.n for w in self._t}
        return len(degs) <= 1

    @property
    def degree(self) -> int:
        """Common degree of a homogeneous polynomial (-1 for zero)."""
        degs = {w.n for w in self._t}
        if not degs:
            return -1
        if len(degs) > 1:
            raise ValueError("degree of a non-homogeneous polynomial")
        return degs.pop()

    def _coerce(self, other):
        if isinstance(other, AbPoly):
            return other
        if isinstance(other, int):
            return AbPoly({AbWord.empty(): other})
        return None

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        return NotImplemented if o is None else self._t == o._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def __add__(self, other) -> "AbPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self._t)
        for w, c in o._t.items():
            v = t.get(w, 0) + c
            if v:
                t[w] = v
            else:
                t.pop(w, None)
        p = AbPoly.__new__(AbPoly)
        p._t = t
        return p

    __radd__ = __add__

    def __neg__(self) -> "AbPoly":
        p = AbPoly.__new__(AbPoly)
        p._t = {w: -c for w, c in self._t.items()}
        return p

    def __sub__(self, other) -> "AbPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other) -> "AbPoly":
        if isinstance(other, int):
            return AbPoly({w: c * other for w, c in self._t.items()})
        if not isinstance(other, AbPoly):
            return NotImplemented
        t: dict[AbWord, int] = {}
        for w1, c1 in self._t.items():
            for w2, c2 in other._t.items():
                w = w1.concat(w2)
                v = t.get(w, 0) + c1 * c2
                if v:
                    t[w] = v
                else:
                    t.pop(w, None)
        p = AbPoly.__new__(AbPoly)
        p._t = t
        return p

    def __rmul__(self, other) -> "AbPoly":
        if isinstance(other, int):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, n: int) -> "AbPoly":
        if n < 0:
            raise ValueError("negative power")
        out = AbPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for i, (w, c) in enumerate(sorted(self._t.items(), key=lambda kv: kv[0])):
            body = str(w) if abs(c) == 1 else f"{abs(c)}*{w}"
            if i == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"AbPoly({self})"


def word(s: str) -> AbPoly:
    """Convenience: the single-word polynomial for a letter string."""
    return AbPoly.from_word(AbWord.from_string(s))


def ab_a() -> AbPoly:
    return word("a")


def ab_b() -> AbPoly:
    return word("b")


def ab_c() -> AbPoly:
    """The sum a + b."""
    return word("a") + word("b")


def theta(p: AbPoly) -> QPoly:
    """Send each word to q**(sum of the 1-based positions of its b's).

    Linear over terms; the empty word maps to 1.  No homogeneity is required
    since the weight is computed per word.
    """
    c: dict[int, int] = {}
    for w, v in p.items():
        e = sum(w.b_positions())
        u = c.get(e, 0) + v
        if u:
            c[e] = u
        else:
            c.pop(e, None)
    return QPoly(c)


def theta_qt(p: AbPoly) -> QTPoly:
    """Bivariate refinement: each word also records its number of b's in t."""
    c: dict[tuple[int, int], int] = {}
    for w, v in p.items():
        key = (sum(w.b_positions()), w.count_b())
        u = c.get(key, 0) + v
        if u:
            c[key] = u
        else:
            c.pop(key, None)
    return QTPoly(c)


def _apply_letterwise(p: AbPoly, image_a: AbPoly, image_b: AbPoly) -> AbPoly:
    """Leibniz extension of a derivation given by its letter images."""
    out = AbPoly.zero()
    for w, c in p.items():
        s = w.letters()
        for i, ch in enumerate(s):
            left = AbWord.from_string(s[:i])
            right = AbWord.from_string(s[i + 1 :])
            img = image_b if ch == "b" else image_a
            mid = AbPoly.zero()
            for iw, ic in img.items():
                mid = mid + AbPoly({left.concat(iw).concat(right): ic * c})
            out = out + mid
    return out


def derivation_g(p: AbPoly) -> AbPoly:
    """The derivation sending a -> ba and b -> ab, extended by Leibniz."""
    return _apply_letterwise(p, word("ba"), word("ab"))


def derivation_d(p: AbPoly) -> AbPoly:
    """The derivation sending both letters to ab + ba."""
    img = word("ab") + word("ba")
    return _apply_letterwise(p, img, img)


def pyr_op(p: AbPoly) -> AbPoly:
    """Pyramid operator: G(p) + p*(a+b)."""
    return derivation_g(p) + p * ab_c()


def bipyr_op(p: AbPoly) -> AbPoly:
    """Bipyramid operator: D(p) + (a+b)*p."""
    return derivation_d(p) + ab_c() * p


def reverse(p: AbPoly) -> AbPoly:
    """Reverse every word; an involution that fixes coefficients."""
    return AbPoly({w.reversed(): c for w, c in p.items()})


def word_of_set(s: Iterable[int], n: int) -> AbWord:
    """Degree-n word with b exactly at the positions of s (subset of 1..n)."""
    ss = set(s)
    if any(not 1 <= i <= n for i in ss):
        raise ValueError(f"set {sorted(ss)} is not a subset of 1..{n}")
    bits = 0
    for i in ss:
        bits |= 1 << (i - 1)
    return AbWord(n, bits)


def upoly_of_set(s: Iterable[int], n: int) -> AbPoly:
    return AbPoly.from_word(word_of_set(s, n))


def vpoly_of_set(s: Iterable[int], n: int) -> AbPoly:
    """b at the positions of s, (a - b) at every other position, expanded."""
    ss = set(s)
    if any(not 1 <= i <= n for i in ss):
        raise ValueError(f"set {sorted(ss)} is not a subset of 1..{n}")
    out = AbPoly.one()
    amb = word("a") - word("b")
    for i in range(1, n + 1):
        out = out * (word("b") if i in ss else amb)
    return out


def set_of_word(w: AbWord) -> frozenset[int]:
    """Positions of the b letters; inverse of word_of_set."""
    return frozenset(w.b_positions())


# --- the cd-side -----------------------------------------------------------


class CdWord:
    """A word over {c, d}; weight counts c once and d twice."""

    __slots__ = ("letters",)

    def __init__(self, letters: str = ""):
        if any(ch not in "cd" for ch in letters):
            raise ValueError(f"letters {letters!r} not over {{c,d}}")
        self.letters = letters

    @classmethod
    def empty(cls) -> "CdWord":
        return cls("")

    @property
    def weight(self) -> int:
        return len(self.letters) + self.letters.count("d")

    def concat(self, other: "CdWord") -> "CdWord":
        return CdWord(self.letters + other.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, CdWord) and self.letters == other.letters

    def __hash__(self):
        return hash(("cd", self.letters))

    def __lt__(self, other: "CdWord") -> bool:
        return (self.weight, self.letters) < (other.weight, other.letters)

    def __str__(self) -> str:
        return self.letters if self.letters else "1"

    def __repr__(self) -> str:
        return f"CdWord({str(self)!r})"


class CdPoly:
    """Integer linear combination of cd-words."""

    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[CdWord, int] | None = None):
        t = {}
        if terms:
            for w, c in terms.items():
                if not isinstance(w, CdWord):
                    raise TypeError("CdPoly keys must be CdWord")
                if c:
                    t[w] = c
        self._t = t

    @classmethod
    def zero(cls) -> "CdPoly":
        return cls()

    @classmethod
    def one(cls) -> "CdPoly":
        return cls({CdWord.empty(): 1})

    @classmethod
    def from_word(cls, w: CdWord, coeff: int = 1) -> "CdPoly":
        return cls({w: coeff})

    def items(self):
        return self._t.items()

    def coeff(self, w: CdWord) -> int:
        return self._t.get(w, 0)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CdPoly({CdWord.empty(): other})
        if not isinstance(other, CdPoly):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def __add__(self, other) -> "CdPoly":
        if not isinstance(other, CdPoly):
            return NotImplemented
        t = dict(self._t)
        for w, c in other._t.items():
            v = t.get(w, 0) + c
            if v:
                t[w] = v
            else:
                t.pop(w, None)
        return CdPoly(t)

    def __neg__(self) -> "CdPoly":
        return CdPoly({w: -c for w, c in self._t.items()})

    def __sub__(self, other) -> "CdPoly":
        if not isinstance(other, CdPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "CdPoly":
        if isinstance(other, int):
            return CdPoly({w: c * other for w, c in self._t.items()})
        if not isinstance(other, CdPoly):
            return NotImplemented
        t: dict[CdWord, int] = {}
        for w1, c1 in self._t.items():
            for w2, c2 in other._t.items():
                w = w1.concat(w2)
                v = t.get(w, 0) + c1 * c2
                if v:
                    t[w] = v
                else:
                    t.pop(w, None)
        return CdPoly(t)

    def __rmul__(self, other) -> "CdPoly":
        if isinstance(other, int):
            return self.__mul__(other)
        return NotImplemented

    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for i, (w, c) in enumerate(sorted(self._t.items(), key=lambda kv: kv[0])):
            body = str(w) if abs(c) == 1 else f"{abs(c)}*{w}"
            if i == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"CdPoly({self})"


def cd_word(s: str) -> CdPoly:
    return CdPoly.from_word(CdWord(s))


def cd_words_of_weight(n: int) -> list[CdWord]:
    """All cd-words of the given weight (Fibonacci-many), sorted."""
    if n < 0:
        raise ValueError("weight must be >= 0")
    out: list[CdWord] = []

    def rec(prefix: str, left: int):
        if left == 0:
            out.append(CdWord(prefix))
            return
        rec(prefix + "c", left - 1)
        if left >= 2:
            rec(prefix + "d", left - 2)

    rec("", n)
    out.sort()
    return out


@lru_cache(maxsize=None)
def _expand_cd_word(letters: str) -> AbPoly:
    out = AbPoly.one()
    c_img = word("a") + word("b")
    d_img = word("ab") + word("ba")
    for ch in letters:
        out = out * (c_img if ch == "c" else d_img)
    return out


def expand_cd(p: CdPoly) -> AbPoly:
    """Substitute c -> a+b and d -> ab+ba, expand and collect."""
    out = AbPoly.zero()
    for w, c in p.items():
        out = out + _expand_cd_word(w.letters) * c
    return out


def to_cd(p: AbPoly) -> CdPoly | None:
    """Rewrite a homogeneous ab-polynomial in c and d, if possible.

    Solves the exact linear system over the cd-words of the right weight and
    returns None when no integer solution exists (the normal outcome for
    inputs outside the cd-subring).  Non-homogeneous input is an error.
    """
    if p.is_zero():
        return CdPoly.zero()
    if not p.is_homogeneous():
        raise ValueError("to_cd requires homogeneous input")
    n = p.degree
    if n == 0:
        return CdPoly({CdWord.empty(): p.coeff(AbWord.empty())})
    cds = cd_words_of_weight(n)
    expansions = [_expand_cd_word(w.letters) for w in cds]
    # Row index: every ab-word of degree n that appears anywhere.
    rows: dict[AbWord, int] = {}
    for exp in expansions:
        for w in exp._t:
            rows.setdefault(w, len(rows))
    for w in p._t:
        if w not in rows:
            return None  # a word no cd-expansion can produce
    m = len(cds)
    mat = [[Fraction(0)] * (m + 1) for _ in range(len(rows))]
    for j, exp in enumerate(expansions):
        for w, c in exp.items():
            mat[rows[w]][j] = Fraction(c)
    for w, c in p.items():
        mat[rows[w]][m] = Fraction(c)
    # Gauss-Jordan elimination; the columns are linearly independent, so a
    # consistent system has a unique rational solution.
    pivot_rows: list[int] = []
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pv = mat[r][col]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivot_rows.append(col)
        r += 1
    for i in range(r, len(mat)):
        if mat[i][m]:
            return None  # inconsistent: not in the span
    sol: dict[CdWord, int] = {}
    for i, col in enumerate(pivot_rows):
        v = mat[i][m]
        if v.denominator != 1:
            return None  # rational but not integral: not in the Z-span
        if v:
            sol[cds[col]] = int(v)
    return CdPoly(sol)


def _cd_derivation_g(p: CdPoly) -> CdPoly:
    """Letterwise image c -> d, d -> cd; agrees with derivation_g under
    expand_cd (property-tested)."""
    out = CdPoly.zero()
    for w, c in p.items():
        s = w.letters
        for i, ch in enumerate(s):
            rep = "d" if ch == "c" else "cd"
            out = out + CdPoly({CdWord(s[:i] + rep + s[i + 1 :]): c})
    return out


def shelling_component(n: int, i: int) -> CdPoly:
    """Simplicial shelling component of weight n.

    Base case: weight-n component at i=0 is the cd-form of the rank-n Boolean
    algebra's ab-index times c; higher i applies the derivation once per
    step.  The i = n case bottoms out at the empty cd-word for n = 0 and is
    therefore zero for n >= 1.
    """
    if n <= 0:
        raise ValueError("shelling_component requires n >= 1")
    if not 0 <= i <= n:
        raise ValueError(f"need 0 <= i <= n, got i={i}")
    base_weight = n - i
    if base_weight == 0:
        base = CdPoly.one()
    else:
        from . import poset  # deferred: poset builds on this module

        psi = poset.ab_index(poset.boolean_algebra(base_weight))
        base_cd = to_cd(psi)
        if base_cd is None:
            raise ArithmeticError("Boolean algebra ab-index must be cd-expressible")
        base = base_cd * cd_word("c")
    out = base
    for _ in range(i):
        out = _cd_derivation_g(out)
    return out
