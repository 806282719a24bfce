"""Edge-labeled graded posets, R-labeling verification, descent words of
maximal chains, and the chain-sum route to the ab-index.

Labels are ints or (j, i) pairs, with the int 0 doubling as the distinguished
zero symbol of signed labelings.  Each labeled poset carries a key function
that linearizes its label order; plain integer labelings use the natural
order, signed labelings sort pairs lexicographically with 0 sitting between
the negative-j and positive-j pairs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Hashable

from .abindex import AbPoly, AbWord
from .permstat import signed_label_key
from .poset import (
    DIAMOND_TOP,
    GradedPoset,
    PosetError,
    cartesian_product,
    chain,
    dual_diamond,
    validate,
)

LabelValue = Hashable  # int or (int, int) pair; 0 is the signed zero symbol


def natural_label_key(label):
    return label


def label_to_str(label: LabelValue) -> str:
    if isinstance(label, tuple):
        return f"({label[0]},{label[1]})"
    return str(label)


_PAIR_RE = re.compile(r"^\((-?\d+),(-?\d+)\)$")


def label_from_str(s: str) -> LabelValue:
    m = _PAIR_RE.match(s)
    if m:
        return (int(m.group(1)), int(m.group(2)))
    try:
        return int(s)
    except ValueError:
        raise ValueError(f"cannot parse label {s!r}") from None


@dataclass(frozen=True)
class RLabelingCheck:
    """Outcome of an R-labeling scan; falsy with a witness interval on failure."""

    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class LabeledPoset:
    """A graded poset with one label per cover and a label-order key."""

    poset: GradedPoset
    labels: dict[tuple, LabelValue]
    key: Callable = natural_label_key

    def __post_init__(self):
        covers = set(self.poset.covers)
        missing = covers - set(self.labels)
        if missing:
            raise PosetError(f"{len(missing)} covers are unlabeled")
        extra = set(self.labels) - covers
        if extra:
            raise PosetError(f"labels reference {len(extra)} non-covers")
        # All labels must be mutually comparable under the key.
        try:
            sorted({self.key(v) for v in self.labels.values()}, key=lambda k: k)
        except TypeError as exc:
            raise PosetError(f"labels are not totally ordered: {exc}") from exc

    def label(self, lo, hi) -> LabelValue:
        return self.labels[(lo, hi)]


def _chains_between(lp: LabeledPoset, x, y):
    """Yield the label sequences of the maximal chains of [x, y]."""
    p = lp.poset
    seq: list = []

    def rec(u):
        if u == y:
            yield tuple(seq)
            return
        for v in p.upper_covers(u):
            if p.le(v, y):
                seq.append(lp.labels[(u, v)])
                yield from rec(v)
                seq.pop()

    yield from rec(x)


def is_r_labeling(lp: LabeledPoset) -> RLabelingCheck:
    """Scan every interval for exactly one weakly increasing maximal chain.

    Exhaustive over intervals and chains; fine at desk scale.  Returns a
    falsy result carrying the first offending interval instead of raising.
    """
    p = lp.poset
    key = lp.key
    for x, y in p.comparable_pairs():
        rising = 0

        def rec(u, last) -> int:
            nonlocal rising
            if u == y:
                rising += 1
                return rising
            for v in p.upper_covers(u):
                if rising >= 2:
                    return rising
                if p.le(v, y):
                    lab = key(lp.labels[(u, v)])
                    if last is None or not (last > lab):
                        rec(v, lab)
            return rising

        rec(x, None)
        if rising != 1:
            return RLabelingCheck(False, (x, y))
    return RLabelingCheck(True)


def jordan_holder_words(lp: LabeledPoset) -> list[AbWord]:
    """Descent word of every maximal chain (b marks a strict label descent)."""
    key = lp.key
    out = []
    for labels in _chains_between(lp, lp.poset.bottom, lp.poset.top):
        bits = 0
        for i in range(len(labels) - 1):
            if key(labels[i]) > key(labels[i + 1]):
                bits |= 1 << i
        out.append(AbWord(len(labels) - 1, bits))
    return out


def bs_sum(lp: LabeledPoset) -> AbPoly:
    """Sum of the descent words over all maximal chains.

    Refuses labelings that fail the R-labeling scan, since only those are
    guaranteed to reproduce the ab-index.
    """
    check = is_r_labeling(lp)
    if not check:
        raise PosetError(
            f"not an R-labeling; witness interval "
            f"{check.witness[0]!r}..{check.witness[1]!r}"
        )
    out = AbPoly.zero()
    for w in jordan_holder_words(lp):
        out = out + AbPoly.from_word(w)
    return out


# -- labeled constructions -----------------------------------------------------


def labeled_chain(length: int, label: LabelValue) -> LabeledPoset:
    """A chain whose covers all carry the same label."""
    c = chain(length)
    return LabeledPoset(c, {cv: label for cv in c.covers})


def labeled_cartesian(a: LabeledPoset, b: LabeledPoset) -> LabeledPoset:
    """Cartesian product; each cover moves one coordinate and inherits its label."""
    p = cartesian_product(a.poset, b.poset)
    labels = {}
    for (lo, hi) in p.covers:
        (xa, ya), (xb, yb) = lo, hi
        if xa == xb:
            labels[(lo, hi)] = b.labels[(ya, yb)]
        else:
            labels[(lo, hi)] = a.labels[(xa, xb)]
    return LabeledPoset(p, labels, a.key)


def product_chain_labeling(alpha) -> LabeledPoset:
    """Product of chains of lengths alpha with coordinate labels 1..k.

    The maximal chains are in bijection with the permutations of the multiset
    {1^a1, ..., k^ak}; the ab-index equals the sum of their descent words.
    """
    parts = list(alpha)
    if not parts or any(x < 1 for x in parts):
        raise ValueError("composition must be non-empty with positive entries")
    lp = labeled_chain(parts[0], 1)
    for i, a in enumerate(parts[1:], start=2):
        lp = labeled_cartesian(lp, labeled_chain(a, i))
    return lp


def labeled_dual_diamond(
    a: LabeledPoset, b: LabeledPoset, top_label: LabelValue = 0
) -> LabeledPoset:
    """Dual diamond of labeled posets.

    Covers away from the new top move one coordinate of the tops-removed
    product and inherit that coordinate's label; covers into the new top get
    the distinguished top label.
    """
    p = dual_diamond(a.poset, b.poset)
    labels = {}
    for (lo, hi) in p.covers:
        if hi == DIAMOND_TOP:
            labels[(lo, hi)] = top_label
            continue
        (xa, ya), (xb, yb) = lo, hi
        if xa == xb:
            labels[(lo, hi)] = b.labels[(ya, yb)]
        else:
            labels[(lo, hi)] = a.labels[(xa, xb)]
    return LabeledPoset(p, labels, a.key)


def signed_fan(r: int, coord: int) -> LabeledPoset:
    """Rank-2 fan for one signed coordinate: one atom per sign j in
    {-1} u {2..r}, bottom covers labeled (j, coord), top covers labeled 0."""
    if r < 1:
        raise ValueError("fan size must be >= 1")
    signs = [-1] + list(range(2, r + 1))
    elements: list = ["bot"] + signs + ["top"]
    covers = [("bot", j) for j in signs] + [(j, "top") for j in signs]
    poset = validate(elements, covers)
    labels: dict[tuple, LabelValue] = {}
    for j in signs:
        labels[("bot", j)] = (j, coord)
        labels[(j, "top")] = 0
    return LabeledPoset(poset, labels, signed_label_key)


def signed_labeling(r) -> LabeledPoset:
    """Iterated dual diamond of signed fans; maximal-chain labels are exactly
    the r-signed permutations with their trailing 0."""
    rs = list(r)
    if not rs or any(x < 1 for x in rs):
        raise ValueError("sign bounds must be a non-empty vector of positive integers")
    lp = signed_fan(rs[0], 1)
    for i, ri in enumerate(rs[1:], start=2):
        lp = labeled_dual_diamond(lp, signed_fan(ri, i))
    return lp


# -- JSON with labels ------------------------------------------------------------


def labeled_poset_to_json(lp: LabeledPoset) -> dict:
    from .poset import poset_to_json

    return poset_to_json(
        lp.poset, {cv: label_to_str(v) for cv, v in lp.labels.items()}
    )


def labeled_poset_from_json(doc: object) -> LabeledPoset:
    from .poset import SchemaError, poset_from_json

    p, raw = poset_from_json(doc)
    if raw is None:
        raise SchemaError("labels", "missing required key for a labeled poset")
    missing = set(p.covers) - set(raw)
    if missing:
        lo, hi = next(iter(missing))
        raise SchemaError("labels", f"cover {lo!r}|{hi!r} is unlabeled")
    labels = {cv: label_from_str(s) for cv, s in raw.items()}
    key = (
        signed_label_key
        if any(isinstance(v, tuple) for v in labels.values())
        else natural_label_key
    )
    return LabeledPoset(p, labels, key)
