"""Two-to-one extension of the Toeplitz subshift by a parity bit.

A point over Toeplitz payload (addr, flag) with difference word y is the
binary sequence x with x_{n+1} = x_n XOR y_n, pinned down by the letter at
position 0.  Letters on a range come from one cumulative sum of the y word
anchored at 0, so coords is exact and O(range).

Also hosts the small substitution-language helpers used to cross-check
letter statistics against fixed points of binary substitutions.
"""

from __future__ import annotations

import numpy as np

from ..core import register_system
from ..dyadic import DyadicInteger, count_even_valuations_range, parse_dyadic
from .symbolic import SymbolicSystem
from .toeplitz import _parse_fields, _parse_flag, make_toeplitz_payload, rule_word

TM_RULES = {"0": "01", "1": "10"}
PD_RULES = {"0": "01", "1": "00"}


def _step_parity(addr: DyadicInteger, flag: int, g: int) -> int:
    """Parity of the y word summed between positions 0 and g."""
    if g == 0:
        return 0
    klo, khi = (0, g) if g > 0 else (g, 0)  # k ranges over [klo, khi)
    num, den = addr.value.numerator, addr.value.denominator
    if den == 1:
        total = count_even_valuations_range(num + klo, num + khi)
        if klo <= -num < khi:
            total += flag
        return total & 1
    word = rule_word(num, den, flag, klo, khi - 1)
    return int(word.sum()) & 1


def make_thuemorse_payload(addr: DyadicInteger, flag: int, bit: int):
    if bit not in (0, 1):
        raise ValueError("bit must be 0 or 1")
    base = make_toeplitz_payload(addr, flag)
    return (base[0], base[1], bit)


class ThueMorseSystem(SymbolicSystem):
    system_id = "thuemorse"

    def act(self, payload, g: int):
        addr, flag, bit = payload
        return (addr.add_int(g), flag, bit ^ _step_parity(addr, flag, g))

    def coords(self, payload, lo, hi):
        addr, flag, bit = payload
        base = min(lo, 0)
        top = max(hi, 0)
        if top > base:
            y = rule_word(addr.value.numerator, addr.value.denominator, flag,
                          base, top - 1)
            cum = np.concatenate(
                [np.zeros(1, dtype=np.int64), np.cumsum(y, dtype=np.int64)]
            )
        else:
            cum = np.zeros(1, dtype=np.int64)
        parity = (cum - cum[-base]) & 1
        xs = (np.uint8(bit) ^ parity.astype(np.uint8))
        return xs[lo - base : hi - base + 1]

    def parse_point(self, text: str):
        fields = _parse_fields(text)
        addr = parse_dyadic(fields.pop("addr"))
        flag = _parse_flag(fields.pop("flag", "plain"))
        bit = int(fields.pop("bit", "0"))
        if fields:
            raise ValueError("unknown payload keys %s" % sorted(fields))
        return make_thuemorse_payload(addr, flag, bit)

    def format_point(self, payload) -> str:
        addr, flag, bit = payload
        return "addr=%s flag=%s bit=%d" % (addr, "primed" if flag else "plain", bit)

    def payload_syntax(self) -> str:
        return "addr=<dyadic> [flag=plain|primed] [bit=0|1]"

    def sample_payloads(self, rng, count: int):
        out = []
        for _ in range(count):
            addr = DyadicInteger.from_int(int(rng.integers(-50, 50)))
            out.append(
                make_thuemorse_payload(
                    addr, int(rng.integers(0, 2)), int(rng.integers(0, 2))
                )
            )
        return out


def complement(payload):
    """The other preimage over the same Toeplitz point."""
    addr, flag, bit = payload
    return (addr, flag, bit ^ 1)


def substitution_language(rules: dict, length: int) -> frozenset:
    """All length-`length` words of the subshift generated by a primitive
    binary substitution, as strings.  Iterates the rule on '0' until the
    window set stabilizes."""
    if length < 1:
        raise ValueError("length must be >= 1")
    word = "0"
    seen = None
    while True:
        word = "".join(rules[c] for c in word)
        if len(word) < 4 * length:
            continue
        windows = frozenset(
            word[i : i + length] for i in range(len(word) - length + 1)
        )
        if windows == seen:
            return windows
        seen = windows


def exchange_language(words: frozenset) -> frozenset:
    swap = str.maketrans("01", "10")
    return frozenset(w.translate(swap) for w in words)


def window_match_fraction(letters: np.ndarray, words: frozenset,
                          length: int):
    """Fraction (exact) of sliding windows of the given length that appear
    in the word set.  Windows are packed into codes, so lengths are capped
    at 62 letters."""
    from fractions import Fraction

    arr = np.ascontiguousarray(letters, dtype=np.uint8)
    if not 1 <= length <= 62:
        raise ValueError("window length must be in [1, 62]")
    if arr.size < length:
        raise ValueError("letter array shorter than the window length")
    codes = np.zeros(arr.size - length + 1, dtype=np.uint64)
    for i in range(length):
        codes |= arr[i : arr.size - length + 1 + i].astype(np.uint64) << np.uint64(i)
    word_codes = np.unique(np.array(
        [int(w[::-1], 2) for w in words if len(w) == length],
        dtype=np.uint64,
    ))
    matched = int(np.isin(codes, word_codes).sum())
    return Fraction(matched, codes.size)


register_system(ThueMorseSystem())
