"""Boolean functions under the Wolfram rule-number convention.

A function of ``n`` variables is stored as its rule number: bit ``i`` of the
rule is the output on truth-table row ``i``, where the row index is the input
tuple ``(x1, ..., xn)`` read as a binary number with ``x1`` most significant.
The top half of a table (``x1 = 0``) is therefore the low half of the rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence, Tuple

MAX_ARITY = 20
ENUMERATION_CAP = 4

SYMBOLS = (0, 1, 2, 3)
# Column pairs (value at x1=0, value at x1=1) of the four 1-variable functions.
SYMBOL_COLUMNS = {0: (0, 0), 1: (1, 0), 2: (0, 1), 3: (1, 1)}

SymbolString = Tuple[int, ...]


class RuleNumber(NamedTuple):
    arity: int
    value: int

    def __str__(self) -> str:
        return f"{self.arity}:{self.value}"

    @classmethod
    def parse(cls, text: str) -> "RuleNumber":
        """Parse the ``"n:R"`` rule form."""
        arity, sep, value = text.strip().partition(":")
        if not sep:
            raise ValueError(f"rule form must look like 'n:R', got {text!r}")
        try:
            rule = cls(int(arity), int(value))
        except ValueError:
            raise ValueError(f"rule form must look like 'n:R', got {text!r}") from None
        _check_rule(rule.arity, rule.value)
        return rule


def _check_arity(arity: int) -> None:
    if not isinstance(arity, int) or arity < 1:
        raise ValueError(f"arity must be a positive integer, got {arity!r}")
    if arity > MAX_ARITY:
        raise ValueError(f"arity {arity} exceeds the cap of {MAX_ARITY}")


def _check_rule(arity: int, value: int) -> None:
    _check_arity(arity)
    if not isinstance(value, int) or value < 0:
        raise ValueError(f"rule number must be a natural number, got {value!r}")
    if value >> (1 << arity):
        raise ValueError(
            f"rule number {value} out of range for arity {arity} "
            f"(must be < 2^{1 << arity})"
        )


def is_power_of_two(k: int) -> bool:
    return k > 0 and k & (k - 1) == 0


@dataclass(frozen=True)
class BooleanFunction:
    """An ``arity``-variable Boolean function identified by its rule number."""

    arity: int
    rule: int

    def __post_init__(self) -> None:
        _check_rule(self.arity, self.rule)

    @property
    def size(self) -> int:
        return 1 << self.arity

    @property
    def table(self) -> Tuple[int, ...]:
        """Output column, top (row 0) to bottom."""
        r = self.rule
        return tuple((r >> i) & 1 for i in range(self.size))

    @classmethod
    def from_table(cls, bits: Sequence[int]) -> "BooleanFunction":
        size = len(bits)
        if not is_power_of_two(size) or size < 2:
            raise ValueError(f"table length must be a power of two >= 2, got {size}")
        rule = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"table entries must be 0 or 1, got {b!r}")
            rule |= b << i
        return cls(size.bit_length() - 1, rule)

    def bitstring(self) -> str:
        return "".join(map(str, self.table))

    def __str__(self) -> str:
        return f"f^{self.arity}_{self.rule}"


def from_rule(rule: RuleNumber | int, arity: int | None = None) -> BooleanFunction:
    """Build the function named by a rule number.

    Accepts either a :class:`RuleNumber` or a bare value plus ``arity``.
    """
    if isinstance(rule, RuleNumber):
        if arity is not None and arity != rule.arity:
            raise ValueError("conflicting arity")
        arity, rule = rule.arity, rule.value
    if arity is None:
        raise ValueError("arity is required with a bare rule value")
    return BooleanFunction(arity, rule)


def rule_number(f: BooleanFunction) -> RuleNumber:
    return RuleNumber(f.arity, f.rule)


def row_index(assignment: Sequence[int]) -> int:
    row = 0
    for x in assignment:
        if x not in (0, 1):
            raise ValueError(f"assignment entries must be 0 or 1, got {x!r}")
        row = (row << 1) | x
    return row


def evaluate(f: BooleanFunction, assignment: Sequence[int]) -> int:
    if len(assignment) != f.arity:
        raise ValueError(
            f"assignment has {len(assignment)} values, function has arity {f.arity}"
        )
    return (f.rule >> row_index(assignment)) & 1


def concat_t(top: BooleanFunction, bottom: BooleanFunction) -> BooleanFunction:
    """Stack two n-variable tables into one (n+1)-variable table.

    ``top`` becomes the ``x1 = 0`` half and ``bottom`` the ``x1 = 1`` half.
    """
    if top.arity != bottom.arity:
        raise ValueError(f"arity mismatch: {top.arity} vs {bottom.arity}")
    return BooleanFunction(top.arity + 1, (bottom.rule << top.size) | top.rule)


def decompose(f: BooleanFunction) -> Tuple[BooleanFunction, BooleanFunction]:
    if f.arity < 2:
        raise ValueError("a 1-variable function cannot be decomposed")
    half = f.size >> 1
    n = f.arity - 1
    return BooleanFunction(n, f.rule & ((1 << half) - 1)), BooleanFunction(n, f.rule >> half)


def index_of_concat(l: int, m: int, n: int) -> int:  # noqa: E741
    """Rule number of ``[f^n_m, f^n_l]^T``, i.e. ``l * 2**(2**n) + m``."""
    _check_arity(n)
    bound = 1 << (1 << n)
    for name, v in (("l", l), ("m", m)):
        if not 0 <= v < bound:
            raise ValueError(f"{name}={v} out of range [0, {bound - 1}] for n={n}")
    return l * bound + m


def to_symbol_string(f: BooleanFunction) -> SymbolString:
    r = f.rule
    return tuple((r >> (2 * j)) & 3 for j in range(f.size >> 1))


def from_symbol_string(s: Sequence[int]) -> BooleanFunction:
    if not s:
        raise ValueError("symbol string must be non-empty")
    if not is_power_of_two(len(s)):
        raise ValueError(
            f"symbol string of length {len(s)} is not a Boolean function "
            "(length must be a power of two)"
        )
    rule = 0
    for j, sym in enumerate(s):
        if sym not in SYMBOL_COLUMNS:
            raise ValueError(f"unknown symbol {sym!r}")
        rule |= sym << (2 * j)
    return BooleanFunction(len(s).bit_length(), rule)


def enumerate_functions(n: int) -> Iterator[BooleanFunction]:
    """All ``2**(2**n)`` functions of arity ``n`` in rule-number order."""
    _check_arity(n)
    if n > ENUMERATION_CAP:
        raise ValueError(f"enumeration is capped at arity {ENUMERATION_CAP}, got {n}")
    for r in range(1 << (1 << n)):
        yield BooleanFunction(n, r)


# Text formats shared with the CLI.

def parse_tokens(text: str) -> SymbolString:
    text = text.strip()
    if not text:
        raise ValueError("token string must be non-empty")
    bad = set(text) - set("0123")
    if bad:
        raise ValueError(f"token string may only contain 0-3, got {''.join(sorted(bad))!r}")
    return tuple(int(c) for c in text)


def format_tokens(s: Sequence[int]) -> str:
    return "".join(str(c) for c in s)


def parse_bits(text: str) -> BooleanFunction:
    text = text.strip()
    if not text or set(text) - set("01"):
        raise ValueError(f"bitstring may only contain 0 and 1, got {text!r}")
    return BooleanFunction.from_table([int(c) for c in text])


def parse_function(text: str) -> BooleanFunction:
    """Parse any of the three textual forms.

    ``"n:R"`` is a rule form. A string containing ``2`` or ``3``, or of odd
    length, can only be a token string. Any other 0/1 string is read as a
    bitstring. Prefix with ``t:`` or ``b:`` to force tokens or bits.
    """
    text = text.strip()
    if text.startswith("t:"):
        return from_symbol_string(parse_tokens(text[2:]))
    if text.startswith("b:"):
        return parse_bits(text[2:])
    if ":" in text:
        return from_rule(RuleNumber.parse(text))
    if set(text) & set("23") or len(text) % 2:
        return from_symbol_string(parse_tokens(text))
    return parse_bits(text)
