"""Directional one-vertex presentations: the d-direction VH datum.

A presentation holds, per direction, a generator set with a self-inverse
involution (fixed points allowed), plus geometric squares stored once each
as canonical 4-letter relator words (g1 g2 g3 g4 = 1, directions
alternating v w v w).  The 8-word orbit of a square consists of the four
cyclic rotations of the word and the four rotations of its inverse word;
the canonical representative is the lexicographic minimum under
(direction rank, generator id).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import MalformedWord

Letter = tuple  # (direction label, generator id)


@dataclass
class Direction:
    label: str
    valency: int
    generators: tuple
    involution: dict

    def inverse(self, gid):
        return self.involution[gid]


@dataclass
class Presentation:
    family: str
    directions: list
    squares: list
    field_info: dict | None = None
    finite_part: dict | None = None
    meta: dict = field(default_factory=dict)

    # -- lookups ------------------------------------------------------------

    def direction(self, label: str) -> Direction:
        for d in self.directions:
            if d.label == label:
                return d
        raise KeyError(label)

    def rank(self) -> dict:
        return {d.label: i for i, d in enumerate(self.directions)}

    def inverse_letter(self, letter: Letter) -> Letter:
        label, gid = letter
        return (label, self.direction(label).involution[gid])

    def involutions(self) -> dict:
        return {d.label: d.involution for d in self.directions}

    def canonical_square(self, word) -> tuple:
        return canonicalize_square(word, self.rank(), self.involutions())

    # -- equality / serialization -------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Presentation) and self.to_json_dict() == other.to_json_dict()

    def to_json_dict(self) -> dict:
        out = {
            "family": self.family,
            "directions": [
                {
                    "label": d.label,
                    "valency": d.valency,
                    "generators": [_gid_out(g) for g in d.generators],
                    "involution": [[_gid_out(g), _gid_out(d.involution[g])] for g in d.generators],
                }
                for d in self.directions
            ],
            "squares": [
                [x for letter in word for x in (letter[0], _gid_out(letter[1]))]
                for word in self.squares
            ],
        }
        if self.field_info is not None:
            out["field"] = self.field_info
        if self.finite_part is not None:
            out["finite_part"] = self.finite_part
        if self.meta:
            out["meta"] = self.meta
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "Presentation":
        directions = []
        for d in data["directions"]:
            gens = tuple(_gid_in(g) for g in d["generators"])
            inv = {_gid_in(a): _gid_in(b) for a, b in d["involution"]}
            directions.append(Direction(d["label"], d["valency"], gens, inv))
        squares = []
        for flat in data["squares"]:
            word = tuple((flat[2 * i], _gid_in(flat[2 * i + 1])) for i in range(4))
            squares.append(word)
        return cls(
            family=data.get("family", "unknown"),
            directions=directions,
            squares=squares,
            field_info=data.get("field"),
            finite_part=data.get("finite_part"),
            meta=data.get("meta", {}),
        )


def _gid_out(gid):
    if isinstance(gid, tuple):
        return [_gid_out(x) for x in gid]
    return gid


def _gid_in(gid):
    if isinstance(gid, list):
        return tuple(_gid_in(x) for x in gid)
    return gid


# ---------------------------------------------------------------------------
# squares

def check_word_shape(word) -> tuple:
    if len(word) != 4:
        raise MalformedWord(f"square word must have 4 letters, got {len(word)}")
    v, w = word[0][0], word[1][0]
    if v == w or word[2][0] != v or word[3][0] != w:
        raise MalformedWord(f"square word must alternate two directions: {word}")
    return v, w


def square_orbit(word, involutions: dict) -> list:
    """The 8 words of the geometric square's orbit (with repeats if degenerate)."""
    check_word_shape(word)

    def inv(letter):
        return (letter[0], involutions[letter[0]][letter[1]])

    words = []
    inverse_word = tuple(inv(letter) for letter in reversed(word))
    for w in (word, inverse_word):
        for r in range(4):
            words.append(w[r:] + w[:r])
    return words


def canonicalize_square(word, rank: dict, involutions: dict) -> tuple:
    """Lexicographically least orbit word under (direction rank, generator id)."""

    def key(w):
        return tuple((rank[label], gid) for label, gid in w)

    return min(square_orbit(word, involutions), key=key)


def square_corners(word, involutions: dict) -> set:
    """Distinct corners covered by the square, as ((v,x),(w,y)) letter pairs.

    The word (a, b, a', b') covers (a, b'^-1), (a^-1, b), (a', b^-1),
    (a'^-1, b'); the first component lies in the direction of slot 0.
    Degenerate squares (even q) cover fewer than 4 distinct corners.
    """
    check_word_shape(word)

    def inv(letter):
        return (letter[0], involutions[letter[0]][letter[1]])

    a, b, a2, b2 = word
    return {
        (a, inv(b2)),
        (inv(a), b),
        (a2, inv(b)),
        (inv(a2), b2),
    }


def corner_coverage(pres: Presentation) -> dict:
    """Per unordered direction pair: corner (x, y) -> number of covering squares."""
    rank = pres.rank()
    involutions = pres.involutions()
    coverage = {}
    for i, di in enumerate(pres.directions):
        for dj in pres.directions[i + 1:]:
            table = {}
            for x in di.generators:
                for y in dj.generators:
                    table[(x, y)] = 0
            coverage[(di.label, dj.label)] = table
    for word in pres.squares:
        v, w = word[0][0], word[1][0]
        first_is_lower = rank[v] < rank[w]
        pair = (v, w) if first_is_lower else (w, v)
        for (lv, gx), (lw, gy) in square_corners(word, involutions):
            corner = (gx, gy) if first_is_lower else (gy, gx)
            coverage[pair][corner] += 1
    return coverage


# ---------------------------------------------------------------------------
# validation

@dataclass
class ValidationReport:
    ok: bool
    problems: list
    per_pair_squares: dict
    corner_defects: list

    def __bool__(self):
        return self.ok


def validate(pres: Presentation) -> ValidationReport:
    """Well-formedness + square-orbit dedup + corner-coverage counts."""
    problems = []
    rank = pres.rank()
    if len(rank) != len(pres.directions):
        problems.append("duplicate direction labels")
    for d in pres.directions:
        gens = set(d.generators)
        if len(gens) != len(d.generators):
            problems.append(f"direction {d.label}: duplicate generators")
        if d.valency != len(d.generators):
            problems.append(f"direction {d.label}: valency {d.valency} != {len(d.generators)} generators")
        if set(d.involution) != gens or set(d.involution.values()) != gens:
            problems.append(f"direction {d.label}: involution is not a permutation of the generators")
        else:
            for g in d.generators:
                if d.involution[d.involution[g]] != g:
                    problems.append(f"direction {d.label}: involution not self-inverse at {g}")

    involutions = pres.involutions()
    seen = set()
    for word in pres.squares:
        try:
            v, w = check_word_shape(word)
        except MalformedWord as exc:
            problems.append(str(exc))
            continue
        for label, gid in word:
            if gid not in pres.direction(label).involution:
                problems.append(f"square {word}: unknown generator {gid} in direction {label}")
        canon = canonicalize_square(word, rank, involutions)
        if canon != word:
            problems.append(f"square {word} is not in canonical orbit form")
        if canon in seen:
            problems.append(f"square orbit {canon} stored twice")
        seen.add(canon)

    corner_defects = []
    per_pair = {}
    if not problems:
        for pair, table in corner_coverage(pres).items():
            n_squares = sum(1 for word in pres.squares
                            if {word[0][0], word[1][0]} == set(pair))
            per_pair[pair] = n_squares
            for corner, count in sorted(table.items()):
                if count != 1:
                    corner_defects.append((pair, corner, count))
    ok = not problems and not corner_defects
    return ValidationReport(ok, problems, per_pair, corner_defects)


# ---------------------------------------------------------------------------
# serialization

def serialize(pres: Presentation, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(pres.to_json_dict(), sort_keys=True, separators=(",", ":")) + "\n").encode()
    if fmt == "text":
        return _to_text(pres).encode()
    raise ValueError(f"unknown format {fmt!r}")


def deserialize(data: bytes) -> Presentation:
    return Presentation.from_json_dict(json.loads(data.decode()))


_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def letter_name(pres: Presentation, letter: Letter) -> str:
    """Display token: direction letter + generator subscript (a_1, b_22, ...)."""
    rank = pres.rank()[letter[0]]
    sym = _LETTERS[rank] if rank < len(_LETTERS) else f"g{rank}"
    gid = letter[1]
    if isinstance(gid, int):
        return f"{sym}_{gid}"
    idx = pres.direction(letter[0]).generators.index(gid) + 1
    return f"{sym}_{idx}"


def _to_text(pres: Presentation) -> str:
    lines = [f"# {pres.family} presentation, {len(pres.directions)} directions"]
    legend = pres.meta.get("letter_legend", {})
    lines.append("< generators:")
    for d in pres.directions:
        names = ", ".join(letter_name(pres, (d.label, g)) for g in d.generators)
        lines.append(f"    direction {d.label} (valency {d.valency}): {names}")
        if d.label in legend:
            for g, display in zip(d.generators, legend[d.label]):
                lines.append(f"        {letter_name(pres, (d.label, g))} = {display}")
    lines.append("| relations:")
    for d in pres.directions:
        done = set()
        for g in d.generators:
            h = d.involution[g]
            if (h, g) in done:
                continue
            done.add((g, h))
            if g == h:
                lines.append(f"    {letter_name(pres, (d.label, g))}^2 = 1")
            else:
                lines.append(
                    f"    {letter_name(pres, (d.label, g))} {letter_name(pres, (d.label, h))} = 1"
                )
    for word in pres.squares:
        lines.append("    " + " ".join(letter_name(pres, letter) for letter in word))
    if pres.finite_part:
        lines.append("| finite part:")
        lines.append("    " + json.dumps(pres.finite_part, sort_keys=True))
    lines.append(">")
    return "\n".join(lines) + "\n"
