"""m-parameter words over a finite ordered alphabet.

A symbol is either ``("L", i)`` for the letter i of the alphabet or
``("V", j)`` for the variable x_j.  Tuples compare letters before variables,
which is the symbol order used for lexicographic enumeration.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .rigidsurj import RigidSurjection

Symbol = tuple[str, int]


def letter(i: int) -> Symbol:
    return ("L", i)


def var(j: int) -> Symbol:
    return ("V", j)


class EmptyWord(ValueError):
    """Partial substitution cut the word before its first symbol."""


def word_violation(symbols: Sequence[Symbol], alphabet_size: int, params: int) -> str | None:
    nxt = 0
    for pos, (kind, idx) in enumerate(symbols):
        if kind == "L":
            if not 0 <= idx < alphabet_size:
                return f"letter {idx} at {pos} outside alphabet of size {alphabet_size}"
        elif kind == "V":
            if not 0 <= idx < params:
                return f"variable x{idx} at {pos} but only {params} parameters"
            if idx > nxt:
                return f"x{idx} at {pos} occurs before x{nxt}"
            if idx == nxt:
                nxt += 1
        else:
            raise ValueError(f"bad symbol kind {kind!r}")
    if nxt != params:
        return f"variable x{nxt} never occurs"
    return None


@dataclass(frozen=True, order=True)
class ParameterWord:
    alphabet_size: int
    params: int
    symbols: tuple[Symbol, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple((str(k), int(i)) for k, i in self.symbols))
        if not self.symbols:
            raise EmptyWord("parameter words have positive length")
        problem = word_violation(self.symbols, self.alphabet_size, self.params)
        if problem:
            raise ValueError(f"not a parameter word: {problem}")

    @classmethod
    def _trusted(cls, alphabet_size, params, symbols) -> "ParameterWord":
        w = object.__new__(cls)
        object.__setattr__(w, "alphabet_size", alphabet_size)
        object.__setattr__(w, "params", params)
        object.__setattr__(w, "symbols", symbols)
        return w

    @property
    def length(self) -> int:
        return len(self.symbols)

    def __str__(self):
        return "".join(f"a{i}" if k == "L" else f"x{i}" for k, i in self.symbols)

    def to_json(self) -> dict:
        return {"alphabet": self.alphabet_size, "symbols": [f"{k}{i}" for k, i in self.symbols]}

    @classmethod
    def from_json(cls, data) -> "ParameterWord":
        if isinstance(data, str):
            data = json.loads(data)
        syms = tuple((s[0], int(s[1:])) for s in data["symbols"])
        params = data.get("params")
        if params is None:
            params = max((i + 1 for k, i in syms if k == "V"), default=0)
        return cls(int(data["alphabet"]), int(params), syms)


def parse_word(text: str, alphabet_size: int) -> ParameterWord:
    """Parse a compact form such as ``"x0 a0 x1 x0"`` (whitespace separated)."""
    syms = []
    for tok in text.split():
        if tok[0] == "a":
            syms.append(letter(int(tok[1:])))
        elif tok[0] == "x":
            syms.append(var(int(tok[1:])))
        else:
            raise ValueError(f"bad token {tok!r}")
    params = max((i + 1 for k, i in syms if k == "V"), default=0)
    return ParameterWord(alphabet_size, params, tuple(syms))


def identity_word(m: int, alphabet_size: int = 0) -> ParameterWord:
    return ParameterWord(alphabet_size, m, tuple(var(j) for j in range(m)))


def enumerate_parameter_words(k: int, n: int, m: int) -> list[ParameterWord]:
    """All of W^n_m over a k-letter alphabet, lexicographic in the symbols."""
    if n < m or m < 0 or k < 0 or n < 1:
        raise ValueError(f"W^{n}_{m} needs n >= m >= 0 and n >= 1")
    choices_letters = [letter(i) for i in range(k)]
    out = []
    word: list[Symbol] = [("L", 0)] * n

    def rec(pos, nxt):
        if m - nxt > n - pos:
            return
        if pos == n:
            out.append(ParameterWord._trusted(k, m, tuple(word)))
            return
        for s in choices_letters:
            word[pos] = s
            rec(pos + 1, nxt)
        for j in range(min(nxt + 1, m)):
            word[pos] = var(j)
            rec(pos + 1, nxt + 1 if j == nxt else nxt)

    rec(0, 0)
    return out


def substitute(u: ParameterWord, v: ParameterWord) -> ParameterWord:
    """``u . v``: replace every x_i in u by the i-th symbol of v."""
    if u.params != v.length:
        raise ValueError(f"u has {u.params} parameters but v has length {v.length}")
    if u.alphabet_size != v.alphabet_size:
        raise ValueError("alphabet mismatch")
    vs = v.symbols
    syms = tuple(s if s[0] == "L" else vs[s[1]] for s in u.symbols)
    return ParameterWord(u.alphabet_size, v.params, syms)


def partial_substitute(u: ParameterWord, v: ParameterWord) -> ParameterWord:
    """``u * v``: substitute x_0..x_{l-1} from v and cut u at the first x_l."""
    ell = v.length
    if ell > u.params:
        raise ValueError(f"v has length {ell} but u has only {u.params} parameters")
    if u.alphabet_size != v.alphabet_size:
        raise ValueError("alphabet mismatch")
    vs = v.symbols
    out = []
    for s in u.symbols:
        if s[0] == "V":
            if s[1] >= ell:
                break
            s = vs[s[1]]
        out.append(s)
    if not out:
        raise EmptyWord(f"x{ell} is the first symbol of {u}; nothing survives the cut")
    return ParameterWord(u.alphabet_size, v.params, tuple(out))


def to_rigid_surjection(u: ParameterWord) -> RigidSurjection:
    """f_u on ``letters < positions -> letters < variables``."""
    k = u.alphabet_size
    vals = list(range(k))
    for kind, i in u.symbols:
        vals.append(i if kind == "L" else k + i)
    return RigidSurjection(k + u.length, k + u.params, tuple(vals))
