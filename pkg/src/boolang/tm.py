"""Deterministic single-tape Turing machines and the power-of-two acceptor.

The tape is left-bounded at cell 0 and grows to the right on demand; cells
never written read as the blank. Moving left at cell 0 leaves the head in
place.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

Transition = Tuple[str, str, str]

ACCEPT = "q_accept"
REJECT = "q_reject"
BLANK = "B"
CROSS = "x"
INPUT_SYMBOLS = ("f_0", "f_1", "f_2", "f_3")


class MachineError(ValueError):
    pass


class Verdict(str, Enum):
    ACCEPTED = "Accepted"
    REJECTED = "Rejected"
    OUT_OF_FUEL = "OutOfFuel"


@dataclass(frozen=True)
class TMachine:
    states: frozenset
    input_alphabet: frozenset
    tape_alphabet: frozenset
    transitions: Mapping[Tuple[str, str], Transition]
    start: str
    accept: str = ACCEPT
    reject: str = REJECT
    blank: str = BLANK

    def __post_init__(self) -> None:
        if self.blank in self.input_alphabet:
            raise MachineError("blank must not be an input symbol")
        if not self.input_alphabet <= self.tape_alphabet or self.blank not in self.tape_alphabet:
            raise MachineError("tape alphabet must contain the input alphabet and the blank")
        for q in (self.start, self.accept, self.reject):
            if q not in self.states:
                raise MachineError(f"unknown state {q!r}")
        for (q, a), (r, b, d) in self.transitions.items():
            if q in (self.accept, self.reject):
                raise MachineError(f"transition out of halt state {q}")
            if q not in self.states or r not in self.states:
                raise MachineError(f"unknown state in δ({q}, {a})")
            if a not in self.tape_alphabet or b not in self.tape_alphabet:
                raise MachineError(f"unknown symbol in δ({q}, {a})")
            if d not in ("L", "R"):
                raise MachineError(f"direction must be L or R in δ({q}, {a})")

    def is_halting(self, state: str) -> bool:
        return state in (self.accept, self.reject)

    def to_text(self) -> str:
        lines = [f"%start {self.start}", f"%accept {self.accept}",
                 f"%reject {self.reject}", f"%blank {self.blank}",
                 "%input " + " ".join(sorted(self.input_alphabet))]
        for (q, a), (r, b, d) in self.transitions.items():
            lines.append(f"{q} {a} -> {r} {b} {d}")
        return "\n".join(lines) + "\n"


def parse_machine(text: str) -> TMachine:
    """Read a transition file: one ``state symbol -> state symbol L|R`` per line.

    Directives ``%start``, ``%accept``, ``%reject``, ``%blank`` and
    ``%input`` (required) configure the machine; ``#`` starts a comment.
    States and tape symbols are collected from the rules.
    """
    opts = {"start": "q_1", "accept": ACCEPT, "reject": REJECT, "blank": BLANK}
    inputs: Optional[frozenset] = None
    delta: Dict[Tuple[str, str], Transition] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("%"):
            key, *args = line[1:].split()
            if key == "input" and args:
                inputs = frozenset(args)
            elif key in opts and len(args) == 1:
                opts[key] = args[0]
            else:
                raise MachineError(f"line {lineno}: bad directive {line!r}")
            continue
        lhs, sep, rhs = line.partition("->")
        lhs, rhs = lhs.split(), rhs.split()
        if not sep or len(lhs) != 2 or len(rhs) != 3:
            raise MachineError(f"line {lineno}: expected 'q a -> r b L|R', got {line!r}")
        key = (lhs[0], lhs[1])
        if key in delta:
            raise MachineError(f"line {lineno}: second transition for δ{key} (machine must be deterministic)")
        delta[key] = (rhs[0], rhs[1], rhs[2])
    if inputs is None:
        raise MachineError("missing %input directive")
    states = {opts["start"], opts["accept"], opts["reject"]}
    symbols = set(inputs) | {opts["blank"]}
    for (q, a), (r, b, _) in delta.items():
        states |= {q, r}
        symbols |= {a, b}
    return TMachine(frozenset(states), inputs, frozenset(symbols), delta, **opts)


def load_machine(path: str | Path) -> TMachine:
    return parse_machine(Path(path).read_text(encoding="utf-8"))


def boolean_tm() -> TMachine:
    """The machine accepting symbol strings whose length is a power of two.

    Each listed rule is expanded over the four input symbols where it is
    quantified, giving 30 concrete entries, 6 for each of q_1 .. q_5.
    """
    delta: Dict[Tuple[str, str], Transition] = {}

    def rule(q: str, a: str, r: str, b: str, d: str) -> None:
        assert (q, a) not in delta, (q, a)
        delta[q, a] = (r, b, d)

    for f in INPUT_SYMBOLS:
        rule("q_1", f, "q_2", BLANK, "R")
    rule("q_2", BLANK, ACCEPT, BLANK, "R")
    rule("q_2", CROSS, "q_2", CROSS, "R")
    for f in INPUT_SYMBOLS:
        rule("q_2", f, "q_3", CROSS, "R")
    rule("q_3", CROSS, "q_3", CROSS, "R")
    for f in INPUT_SYMBOLS:
        rule("q_3", f, "q_4", f, "R")
    rule("q_3", BLANK, "q_5", BLANK, "L")
    rule("q_4", CROSS, "q_4", CROSS, "R")
    for f in INPUT_SYMBOLS:
        rule("q_4", f, "q_3", CROSS, "R")
    rule("q_4", BLANK, REJECT, BLANK, "R")
    for f in INPUT_SYMBOLS:
        rule("q_5", f, "q_5", f, "L")
    rule("q_5", CROSS, "q_5", CROSS, "L")
    rule("q_5", BLANK, "q_2", BLANK, "R")
    rule("q_1", BLANK, REJECT, BLANK, "R")
    rule("q_1", CROSS, REJECT, CROSS, "R")

    states = frozenset({"q_1", "q_2", "q_3", "q_4", "q_5", ACCEPT, REJECT})
    return TMachine(
        states=states,
        input_alphabet=frozenset(INPUT_SYMBOLS),
        tape_alphabet=frozenset(INPUT_SYMBOLS + (CROSS, BLANK)),
        transitions=delta,
        start="q_1",
    )


@dataclass(frozen=True)
class Configuration:
    tape: Tuple[str, ...]
    head: int
    state: str

    def read(self, blank: str = BLANK) -> str:
        return self.tape[self.head] if self.head < len(self.tape) else blank

    def render(self, m: Optional[TMachine] = None) -> str:
        """Tape with the state written just left of the scanned cell.

        Blanks right of the head are dropped from the end. A running
        machine always shows its scanned cell, so a head past the last
        non-blank cell renders as ``q B``; a halted one shows nothing after
        the state there.
        """
        blank = m.blank if m else BLANK
        halted = m.is_halting(self.state) if m else self.state in (ACCEPT, REJECT)
        right = list(self.tape[self.head:])
        while right and right[-1] == blank:
            right.pop()
        if not right and not halted:
            right = [blank]
        return " ".join(list(self.tape[:self.head]) + [self.state] + right)


def start_configuration(m: TMachine, word: Sequence[str]) -> Configuration:
    bad = [a for a in word if a not in m.input_alphabet]
    if bad:
        raise MachineError(f"symbols {bad} are not in the input alphabet")
    return Configuration(tuple(word), 0, m.start)


def step(m: TMachine, c: Configuration) -> Configuration:
    """Apply one transition. The write and move happen even when entering a halt state."""
    if m.is_halting(c.state):
        raise MachineError(f"configuration is already halted in {c.state}")
    a = c.read(m.blank)
    try:
        r, b, d = m.transitions[c.state, a]
    except KeyError:
        raise MachineError(f"no transition for δ({c.state}, {a})") from None
    tape = list(c.tape)
    if c.head == len(tape):
        tape.append(b)
    else:
        tape[c.head] = b
    head = c.head + 1 if d == "R" else max(c.head - 1, 0)
    return Configuration(tuple(tape), head, r)


def default_fuel(length: int) -> int:
    return 4 * (length + 2) ** 2


@dataclass
class RunResult:
    verdict: Verdict
    steps: int
    final: Configuration
    trace: Optional[List[Configuration]] = field(default=None, repr=False)

    @property
    def accepted(self) -> bool:
        return self.verdict is Verdict.ACCEPTED


def run(m: TMachine, word: Sequence[str], fuel: Optional[int] = None,
        trace: bool = False) -> RunResult:
    if fuel is None:
        fuel = default_fuel(len(word))
    c = start_configuration(m, word)
    configs = [c] if trace else None
    steps = 0
    while not m.is_halting(c.state):
        if steps >= fuel:
            return RunResult(Verdict.OUT_OF_FUEL, steps, c, configs)
        c = step(m, c)
        steps += 1
        if configs is not None:
            configs.append(c)
    verdict = Verdict.ACCEPTED if c.state == m.accept else Verdict.REJECTED
    return RunResult(verdict, steps, c, configs)


def format_trace(result: RunResult, m: Optional[TMachine] = None, arrow: str = " → ") -> str:
    if result.trace is None:
        raise ValueError("run was made without trace=True")
    return arrow.join(c.render(m) for c in result.trace)


def trace_to_json(result: RunResult) -> str:
    if result.trace is None:
        raise ValueError("run was made without trace=True")
    return json.dumps({
        "verdict": result.verdict.value,
        "steps": result.steps,
        "trace": [
            {"step": k, "state": c.state, "head": c.head, "tape": " ".join(c.tape)}
            for k, c in enumerate(result.trace)
        ],
    })
