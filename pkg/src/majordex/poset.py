"""Finite bounded graded posets: validation, flag vectors, ab-index, Mobius
function, Eulerian/simplicial predicates, constructions, and the two products.

Elements are arbitrary hashable labels (strings, ints, frozensets, pairs);
product constructions label elements with pairs and the JSON writer
serializes labels canonically so results are reproducible.  Posets are
immutable once validated; internal caches only memoize pure queries.
"""

from __future__ import annotations

import json
from itertools import combinations
from typing import Hashable, Iterable, Iterator, Mapping

import numpy as np

from .abindex import AbPoly, upoly_of_set, vpoly_of_set
from .qarith import QPoly

Element = Hashable

# Largest chain count for which the int64 fast path is safe.
_INT64_SAFE = 1 << 62


class PosetError(ValueError):
    pass


class ValidationError(PosetError):
    """A named structural violation found while validating a poset."""

    def __init__(self, reason: str, message: str):
        super().__init__(f"{reason}: {message}")
        self.reason = reason


class SchemaError(PosetError):
    """A malformed poset JSON document; names the offending key."""

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


def canonical_id(label: Element) -> str:
    """Deterministic string id for an element label.

    Strings pass through; ints stringify; frozensets render as '{...}' with
    sorted members; pairs from product constructions render as '(left|right)'.
    """
    if isinstance(label, str):
        return label
    if isinstance(label, (int, np.integer)):
        return str(int(label))
    if isinstance(label, frozenset):
        return "{" + ",".join(sorted((canonical_id(x) for x in label), key=_num_aware)) + "}"
    if isinstance(label, tuple):
        return "(" + "|".join(canonical_id(x) for x in label) + ")"
    raise TypeError(f"cannot serialize element label of type {type(label).__name__}")


def _num_aware(s: str):
    try:
        return (0, int(s), s)
    except ValueError:
        return (1, 0, s)


class GradedPoset:
    """A validated finite bounded graded poset.

    Use :func:`validate` (or the constructors below) to build one; the raw
    constructor trusts its arguments.
    """

    __slots__ = (
        "_labels",
        "_index",
        "_canon",
        "_ranks",
        "_level_start",
        "_up",
        "_down",
        "_covers",
        "_reach_up",
        "_reach_down",
        "_mobius_cache",
        "_zeta_cache",
        "_max_chains",
    )

    def __init__(self, labels, ranks, up, down, covers, canon):
        self._labels = labels
        self._canon = canon
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._ranks = ranks
        self._up = up
        self._down = down
        self._covers = covers
        starts = [0] * (ranks[-1] + 2) if labels else [0]
        for r in ranks:
            starts[r + 1] += 1
        for i in range(1, len(starts)):
            starts[i] += starts[i - 1]
        self._level_start = starts
        self._reach_up = None
        self._reach_down = None
        self._mobius_cache = {}
        self._zeta_cache = {}
        self._max_chains = None

    # -- basic queries ------------------------------------------------------

    @property
    def elements(self) -> tuple:
        return self._labels

    def __len__(self) -> int:
        return len(self._labels)

    def __contains__(self, label) -> bool:
        return label in self._index

    @property
    def rank(self) -> int:
        return self._ranks[-1]

    @property
    def bottom(self):
        return self._labels[0]

    @property
    def top(self):
        return self._labels[-1]

    @property
    def covers(self) -> tuple:
        """Cover pairs (lower, upper) as element labels."""
        return tuple(
            (self._labels[i], self._labels[j]) for i, j in self._covers
        )

    def rank_of(self, label) -> int:
        return self._ranks[self._index[label]]

    def elements_of_rank(self, r: int) -> list:
        if not 0 <= r <= self.rank:
            return []
        return list(self._labels[self._level_start[r] : self._level_start[r + 1]])

    def upper_covers(self, label) -> list:
        return [self._labels[j] for j in self._up[self._index[label]]]

    def lower_covers(self, label) -> list:
        return [self._labels[j] for j in self._down[self._index[label]]]

    def atoms(self) -> list:
        return self.elements_of_rank(1)

    def coatoms(self) -> list:
        return self.elements_of_rank(self.rank - 1)

    def _ensure_reach(self):
        if self._reach_up is not None:
            return
        n = len(self._labels)
        ru = [0] * n
        for i in range(n - 1, -1, -1):
            m = 1 << i
            for j in self._up[i]:
                m |= ru[j]
            ru[i] = m
        rd = [0] * n
        for i in range(n):
            m = 1 << i
            for j in self._down[i]:
                m |= rd[j]
            rd[i] = m
        self._reach_up = ru
        self._reach_down = rd

    def le(self, x, y) -> bool:
        self._ensure_reach()
        return bool(self._reach_up[self._index[x]] >> self._index[y] & 1)

    def comparable_pairs(self) -> Iterator[tuple]:
        """All pairs (x, y) with x < y."""
        self._ensure_reach()
        for i in range(len(self._labels)):
            m = self._reach_up[i] & ~(1 << i)
            while m:
                j = (m & -m).bit_length() - 1
                yield (self._labels[i], self._labels[j])
                m &= m - 1

    def _between(self, i: int, j: int) -> Iterator[int]:
        """Indices of elements z with x_i <= z <= x_j."""
        self._ensure_reach()
        m = self._reach_up[i] & self._reach_down[j]
        while m:
            k = (m & -m).bit_length() - 1
            yield k
            m &= m - 1

    def interval(self, x, y) -> "GradedPoset":
        """The closed interval [x, y] as a poset in its own right."""
        i, j = self._index[x], self._index[y]
        self._ensure_reach()
        if not (self._reach_up[i] >> j) & 1:
            raise PosetError(f"{canonical_id(x)} and {canonical_id(y)} are not comparable")
        keep = set(self._between(i, j))
        elems = [self._labels[k] for k in sorted(keep)]
        covers = [
            (self._labels[a], self._labels[b])
            for a, b in self._covers
            if a in keep and b in keep
        ]
        return validate(elems, covers)

    def max_chain_count(self) -> int:
        """Number of maximal chains, counted exactly over the covers."""
        if self._max_chains is None:
            cnt = [0] * len(self._labels)
            cnt[0] = 1
            for i in range(len(self._labels)):
                if cnt[i]:
                    for j in self._up[i]:
                        cnt[j] += cnt[i]
            self._max_chains = cnt[-1] if len(self._labels) > 1 else 1
        return self._max_chains

    def __repr__(self) -> str:
        return f"GradedPoset(rank={self.rank}, elements={len(self)})"

    # -- zeta matrices between rank levels ----------------------------------

    def _level_range(self, r: int) -> tuple[int, int]:
        return self._level_start[r], self._level_start[r + 1]

    def _zeta(self, a: int, b: int) -> np.ndarray:
        key = (a, b)
        z = self._zeta_cache.get(key)
        if z is None:
            self._ensure_reach()
            sa, ea = self._level_range(a)
            sb, eb = self._level_range(b)
            nb = eb - sb
            nbytes = (nb + 7) // 8
            rows = np.empty((ea - sa, nb), dtype=np.int64)
            mask = (1 << nb) - 1
            for r, i in enumerate(range(sa, ea)):
                m = (self._reach_up[i] >> sb) & mask
                bits = np.unpackbits(
                    np.frombuffer(m.to_bytes(nbytes, "little"), dtype=np.uint8),
                    bitorder="little",
                )[:nb]
                rows[r] = bits
            self._zeta_cache[key] = z = rows
        return z

    def _pred_lists(self, a: int, b: int) -> list[list[int]]:
        """For each level-b element, the level-a indices below it (exact path)."""
        self._ensure_reach()
        sa, ea = self._level_range(a)
        sb, eb = self._level_range(b)
        out = []
        for j in range(sb, eb):
            out.append(
                [i - sa for i in range(sa, ea) if self._reach_up[i] >> j & 1]
            )
        return out


def validate(elements: Iterable[Element], covers: Iterable[tuple]) -> GradedPoset:
    """Check bounded gradedness and build a poset, or raise a named error.

    Distinct failures: "duplicate-element", "unknown-element", "cycle",
    "no-unique-minimum", "no-unique-maximum", "not-graded".
    """
    labels = list(elements)
    if not labels:
        raise ValidationError("empty", "a poset needs at least one element")
    index: dict = {}
    for lab in labels:
        if lab in index:
            raise ValidationError("duplicate-element", canonical_id(lab))
        index[lab] = len(index)
    n = len(labels)
    up: list[list[int]] = [[] for _ in range(n)]
    down: list[list[int]] = [[] for _ in range(n)]
    for lo, hi in covers:
        if lo not in index:
            raise ValidationError("unknown-element", f"cover references {canonical_id(lo)}")
        if hi not in index:
            raise ValidationError("unknown-element", f"cover references {canonical_id(hi)}")
        i, j = index[lo], index[hi]
        if i == j:
            raise ValidationError("cycle", f"self-cover at {canonical_id(lo)}")
        if j not in up[i]:
            up[i].append(j)
            down[j].append(i)

    # Kahn toposort detects cycles.
    indeg = [len(d) for d in down]
    queue = [i for i in range(n) if indeg[i] == 0]
    topo = []
    while queue:
        i = queue.pop()
        topo.append(i)
        for j in up[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                queue.append(j)
    if len(topo) != n:
        bad = [canonical_id(labels[i]) for i in range(n) if indeg[i] > 0]
        raise ValidationError("cycle", f"covers contain a cycle through {bad[:4]}")

    minimals = [i for i in range(n) if not down[i]]
    if len(minimals) != 1:
        names = sorted(canonical_id(labels[i]) for i in minimals)
        raise ValidationError("no-unique-minimum", f"minimal elements {names}")
    maximals = [i for i in range(n) if not up[i]]
    if len(maximals) != 1:
        names = sorted(canonical_id(labels[i]) for i in maximals)
        raise ValidationError("no-unique-maximum", f"maximal elements {names}")

    ranks = [-1] * n
    ranks[minimals[0]] = 0
    for i in topo:
        for j in up[i]:
            if ranks[j] == -1:
                ranks[j] = ranks[i] + 1
            elif ranks[j] != ranks[i] + 1:
                raise ValidationError(
                    "not-graded",
                    f"cover {canonical_id(labels[i])} -> {canonical_id(labels[j])} "
                    f"breaks the rank function",
                )

    canon = [canonical_id(lab) for lab in labels]
    order = sorted(range(n), key=lambda i: (ranks[i], canon[i]))
    pos = [0] * n
    for new_i, old_i in enumerate(order):
        pos[old_i] = new_i
    new_labels = tuple(labels[i] for i in order)
    new_canon = [canon[i] for i in order]
    new_ranks = [ranks[i] for i in order]
    new_up = [sorted(pos[j] for j in up[i]) for i in order]
    new_down = [sorted(pos[j] for j in down[i]) for i in order]
    new_covers = tuple(
        sorted((pos[index[lo]], pos[index[hi]]) for lo, hi in {(l, h) for l, h in covers})
    )
    return GradedPoset(new_labels, new_ranks, new_up, new_down, new_covers, new_canon)


# -- flag vectors and the ab-index ------------------------------------------


def flag_f(p: GradedPoset) -> dict[frozenset, int]:
    """Chain counts f_S for every S inside {1..rank-1}.

    Computed by multiplying rank-level zeta matrices along each subset,
    sharing prefixes; falls back to exact big-int arithmetic when counts
    could overflow int64 (never at desk scale).
    """
    n = p.rank - 1
    if n < 0:
        raise PosetError("flag_f requires rank >= 1... rank 0 has no chains to select")
    out: dict[frozenset, int] = {}
    if p.max_chain_count() < _INT64_SAFE:
        def rec(level: int, vec: np.ndarray, chosen: tuple):
            out[frozenset(chosen)] = int(vec.sum())
            for s in range(level + 1, n + 1):
                rec(s, vec @ p._zeta(level, s), chosen + (s,))

        rec(0, np.ones(1, dtype=np.int64), ())
    else:  # pragma: no cover - exercised only beyond desk scale
        def rec_py(level: int, vec: list[int], chosen: tuple):
            out[frozenset(chosen)] = sum(vec)
            for s in range(level + 1, n + 1):
                preds = p._pred_lists(level, s)
                rec_py(s, [sum(vec[i] for i in pr) for pr in preds], chosen + (s,))

        rec_py(0, [1], ())
    return out


def flag_h(fv: Mapping[frozenset, int]) -> dict[frozenset, int]:
    """Inclusion-exclusion transform of a flag f-vector."""
    out: dict[frozenset, int] = {}
    for S in fv:
        items = sorted(S)
        total = 0
        for k in range(len(items) + 1):
            for T in combinations(items, k):
                total += (-1) ** (len(S) - k) * fv[frozenset(T)]
        out[S] = total
    return out


def flag_f_inverse_of_h(hv: Mapping[frozenset, int]) -> dict[frozenset, int]:
    """Recover f_S = sum over T subset of S of h_T (test oracle round-trip)."""
    out: dict[frozenset, int] = {}
    for S in hv:
        items = sorted(S)
        out[S] = sum(
            hv[frozenset(T)] for k in range(len(items) + 1) for T in combinations(items, k)
        )
    return out


def ab_index(p: GradedPoset) -> AbPoly:
    """The ab-index: sum of h_S times the b-marked word of S."""
    if p.rank < 1:
        raise PosetError("ab_index requires a poset of rank >= 1")
    n = p.rank - 1
    hv = flag_h(flag_f(p))
    out = AbPoly.zero()
    for S, h in hv.items():
        if h:
            out = out + upoly_of_set(S, n) * h
    return out


def ab_index_via_f(p: GradedPoset) -> AbPoly:
    """Independent route: sum of f_S times the (a-b)-filled word of S."""
    if p.rank < 1:
        raise PosetError("ab_index requires a poset of rank >= 1")
    n = p.rank - 1
    fv = flag_f(p)
    out = AbPoly.zero()
    for S, f in fv.items():
        if f:
            out = out + vpoly_of_set(S, n) * f
    return out


# -- Mobius function and poset predicates ------------------------------------


def mobius(p: GradedPoset, x, y) -> int:
    """Mobius function of the interval [x, y], by memoized recursion."""
    i, j = p._index[x], p._index[y]
    p._ensure_reach()
    if not p._reach_up[i] >> j & 1:
        raise PosetError(
            f"{canonical_id(x)} and {canonical_id(y)} are not comparable"
        )
    return _mobius_idx(p, i, j)


def _mobius_idx(p: GradedPoset, i: int, j: int) -> int:
    if i == j:
        return 1
    cache = p._mobius_cache
    val = cache.get((i, j))
    if val is None:
        val = -sum(_mobius_idx(p, i, k) for k in p._between(i, j) if k != j)
        cache[(i, j)] = val
    return val


def is_eulerian(p: GradedPoset) -> bool:
    """True when mu(x,y) = (-1)^(rank difference) on every interval."""
    for x, y in p.comparable_pairs():
        d = p.rank_of(y) - p.rank_of(x)
        if mobius(p, x, y) != (-1) ** d:
            return False
    return True


def is_simplicial(p: GradedPoset) -> bool:
    """True when every proper lower interval is a Boolean algebra.

    Each element below the top is mapped to its set of atoms; the interval is
    Boolean iff that map is an order-isomorphism onto the full subset lattice.
    """
    p._ensure_reach()
    bot = 0
    atoms_all = [p._index[a] for a in p.atoms()]
    top = len(p._labels) - 1
    for xi in range(len(p._labels)):
        if xi == top and p.rank > 0:
            continue
        r = p._ranks[xi]
        below = [k for k in p._between(bot, xi)]
        if len(below) != 1 << r:
            return False
        atoms_x = [a for a in atoms_all if p._reach_up[a] >> xi & 1]
        if len(atoms_x) != r:
            return False
        asets = {}
        for z in below:
            s = frozenset(a for a in atoms_x if p._reach_up[a] >> z & 1)
            if s in asets.values():
                return False
            asets[z] = s
        for z1 in below:
            for z2 in below:
                zle = bool(p._reach_up[z1] >> z2 & 1)
                if zle != (asets[z1] <= asets[z2]):
                    return False
    return True


def f_vector(p: GradedPoset) -> list[int]:
    """Simplicial f-vector (f_0,...,f_n) with f_0 = 1; rejects non-simplicial."""
    if not is_simplicial(p):
        raise PosetError("f_vector requires a simplicial poset")
    n = p.rank - 1
    return [1] + [len(p.elements_of_rank(i)) for i in range(1, n + 1)]


def h_polynomial(p: GradedPoset) -> QPoly:
    """h(q) = sum_i f_i q^i (1-q)^(n-i) for a simplicial poset of rank n+1."""
    fv = f_vector(p)
    n = len(fv) - 1
    one_minus_q = QPoly({0: 1, 1: -1})
    out = QPoly.zero()
    for i, f in enumerate(fv):
        out = out + QPoly.monomial(i, f) * one_minus_q ** (n - i)
    return out


# -- products ----------------------------------------------------------------


def cartesian_product(p: GradedPoset, q: GradedPoset) -> GradedPoset:
    """Componentwise order on pairs; ranks add."""
    elements = [(x, y) for x in p.elements for y in q.elements]
    covers = []
    for (lo, hi) in p.covers:
        for y in q.elements:
            covers.append(((lo, y), (hi, y)))
    for (lo, hi) in q.covers:
        for x in p.elements:
            covers.append(((x, lo), (x, hi)))
    return validate(elements, covers)


def pyr_poset(p: GradedPoset) -> GradedPoset:
    """Pyramid: Cartesian product with the rank-1 Boolean algebra."""
    return cartesian_product(p, boolean_algebra(1))


DIAMOND_TOP = "top"


def dual_diamond(p: GradedPoset, q: GradedPoset) -> GradedPoset:
    """Product of tops-removed posets with one new maximum adjoined."""
    if p.rank < 1 or q.rank < 1:
        raise PosetError("dual diamond requires operands of rank >= 1")
    px = [x for x in p.elements if x != p.top]
    qx = [y for y in q.elements if y != q.top]
    elements: list = [(x, y) for x in px for y in qx]
    covers = []
    for (lo, hi) in p.covers:
        if hi == p.top:
            continue
        for y in qx:
            covers.append(((lo, y), (hi, y)))
    for (lo, hi) in q.covers:
        if hi == q.top:
            continue
        for x in px:
            covers.append(((x, lo), (x, hi)))
    for x in p.coatoms():
        for y in q.coatoms():
            covers.append(((x, y), DIAMOND_TOP))
    elements.append(DIAMOND_TOP)
    return validate(elements, covers)


def bipyr_poset(p: GradedPoset) -> GradedPoset:
    """Bipyramid: dual diamond with the rank-2 Boolean algebra."""
    return dual_diamond(p, boolean_algebra(2))


# -- constructors -------------------------------------------------------------


def boolean_algebra(n: int) -> GradedPoset:
    """Subset lattice of {1..n}."""
    if n < 0:
        raise PosetError("boolean_algebra requires n >= 0")
    elements = [
        frozenset(c) for r in range(n + 1) for c in combinations(range(1, n + 1), r)
    ]
    covers = [
        (s, s | {i})
        for s in elements
        for i in range(1, n + 1)
        if i not in s
    ]
    return validate(elements, covers)


def chain(n: int) -> GradedPoset:
    """Linear order of rank n (n+1 elements)."""
    if n < 0:
        raise PosetError("chain requires n >= 0")
    return validate(list(range(n + 1)), [(i, i + 1) for i in range(n)])


def t_poset(n: int) -> GradedPoset:
    """Boolean algebra of rank n with a new maximal element on top."""
    if n < 0:
        raise PosetError("t_poset requires n >= 0")
    b = boolean_algebra(n)
    elements = list(b.elements) + ["top"]
    covers = list(b.covers) + [(b.top, "top")]
    return validate(elements, covers)


def simplex_lattice(n: int) -> GradedPoset:
    """Face lattice of the n-simplex: the Boolean algebra of rank n+1."""
    if n < 0:
        raise PosetError("simplex_lattice requires n >= 0")
    return boolean_algebra(n + 1)


def cross_polytope(n: int) -> GradedPoset:
    """Face lattice of the n-dimensional cross-polytope.

    Faces are antipode-free subsets of {+-1..+-n} ordered by inclusion, with
    a maximal element adjoined; rank n+1.
    """
    if n < 1:
        raise PosetError("cross_polytope requires n >= 1")
    items = [i for i in range(1, n + 1)] + [-i for i in range(1, n + 1)]
    faces = [
        frozenset(c)
        for r in range(n + 1)
        for c in combinations(items, r)
        if all(-x not in c for x in c)
    ]
    covers = [
        (f, f | {i})
        for f in faces
        for i in items
        if i not in f and -i not in f and len(f) < n
    ]
    elements: list = list(faces) + ["top"]
    covers += [(f, "top") for f in faces if len(f) == n]
    return validate(elements, covers)


def fan_poset(r: int) -> GradedPoset:
    """Rank-2 poset with r atoms between its bottom and top."""
    if r < 1:
        raise PosetError("fan_poset requires r >= 1")
    elements: list = ["bot"] + list(range(1, r + 1)) + ["top"]
    covers = [("bot", i) for i in range(1, r + 1)] + [
        (i, "top") for i in range(1, r + 1)
    ]
    return validate(elements, covers)


# -- JSON interchange ---------------------------------------------------------


def split_cover_key(key: str) -> tuple[str, str]:
    """Split a 'lower|upper' label key at its top-level separator."""
    depth = 0
    for i, ch in enumerate(key):
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        elif ch == "|" and depth == 0:
            return key[:i], key[i + 1 :]
    raise SchemaError("labels", f"malformed cover key {key!r}")


def poset_to_json(p: GradedPoset, labels: Mapping[tuple, str] | None = None) -> dict:
    """JSON document for a poset, optionally with per-cover label strings."""
    ids = {lab: canonical_id(lab) for lab in p.elements}
    if len(set(ids.values())) != len(ids):
        raise PosetError("element ids collide under canonical serialization")
    doc = {
        "elements": [ids[lab] for lab in p.elements],
        "covers": [[ids[lo], ids[hi]] for lo, hi in p.covers],
    }
    if labels is not None:
        out = {}
        for (lo, hi), s in labels.items():
            out[f"{ids[lo]}|{ids[hi]}"] = s
        doc["labels"] = out
    return doc


def poset_from_json(doc: object) -> tuple[GradedPoset, dict[tuple[str, str], str] | None]:
    """Validate a JSON document and build the poset (plus raw label strings)."""
    if not isinstance(doc, dict):
        raise SchemaError("$", "document must be a JSON object")
    if "elements" not in doc:
        raise SchemaError("elements", "missing required key")
    if "covers" not in doc:
        raise SchemaError("covers", "missing required key")
    elements = doc["elements"]
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise SchemaError("elements", "must be a list of strings")
    covers_raw = doc["covers"]
    if not isinstance(covers_raw, list):
        raise SchemaError("covers", "must be a list of [lower, upper] pairs")
    known = set(elements)
    covers = []
    for k, c in enumerate(covers_raw):
        if (
            not isinstance(c, list)
            or len(c) != 2
            or not all(isinstance(x, str) for x in c)
        ):
            raise SchemaError(f"covers[{k}]", "must be a [lower, upper] pair of strings")
        if c[0] not in known:
            raise SchemaError(f"covers[{k}]", f"unknown element {c[0]!r}")
        if c[1] not in known:
            raise SchemaError(f"covers[{k}]", f"unknown element {c[1]!r}")
        covers.append((c[0], c[1]))
    p = validate(elements, covers)
    labels = None
    if "labels" in doc:
        raw = doc["labels"]
        if not isinstance(raw, dict):
            raise SchemaError("labels", "must be an object of cover -> label strings")
        cover_set = {(lo, hi) for lo, hi in covers}
        labels = {}
        for key, val in raw.items():
            if not isinstance(val, str):
                raise SchemaError(f"labels[{key!r}]", "label must be a string")
            lo, hi = split_cover_key(key)
            if (lo, hi) not in cover_set:
                raise SchemaError(f"labels[{key!r}]", "no such cover")
            labels[(lo, hi)] = val
    return p, labels


def write_poset(path: str, p: GradedPoset, labels=None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(poset_to_json(p, labels), fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_poset(path: str) -> tuple[GradedPoset, dict | None]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError("$", f"invalid JSON: {exc}") from exc
    return poset_from_json(doc)
