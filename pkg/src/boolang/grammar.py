"""Unrestricted (type-0) grammar engine and the Boolean-function grammar.

Symbols are plain string tokens. Sentential forms are tuples of tokens. The
search routines intern every token to a single character and work on Python
strings, which keeps the visited sets compact enough for exhaustive
generation up to length 8.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

Form = Tuple[str, ...]

EPS = "eps"
GENERATE_CAP = 8

TERMINALS = ("0", "1", "2", "3")
VARIABLES = ("S", "L", "R", "L_h", "[", "]")
MARKERS = ("R", "L", "L_h")


class GrammarError(ValueError):
    pass


class NoMatch(GrammarError):
    """A production's left side does not occur at the requested position."""


class SearchLimitExceeded(RuntimeError):
    """The search hit a resource limit before reaching a verdict."""


class InvariantViolation(RuntimeError):
    pass


@dataclass(frozen=True)
class Production:
    lhs: Form
    rhs: Form
    paper: bool = True

    def __str__(self) -> str:
        rhs = " ".join(self.rhs) if self.rhs else EPS
        return f"{' '.join(self.lhs)} -> {rhs}"


@dataclass(frozen=True)
class Grammar:
    terminals: frozenset
    variables: frozenset
    start: str
    productions: Tuple[Production, ...]
    # Groups of symbols of which any reachable form holds at most one.
    exclusive: Tuple[frozenset, ...] = ()

    def __post_init__(self) -> None:
        if self.start not in self.variables:
            raise GrammarError(f"start symbol {self.start!r} is not a variable")
        if self.terminals & self.variables:
            raise GrammarError("terminals and variables overlap")
        known = self.terminals | self.variables
        for p in self.productions:
            if not p.lhs:
                raise GrammarError(f"empty left side in {p}")
            if not any(s in self.variables for s in p.lhs):
                raise GrammarError(f"left side of {p} has no variable")
            unknown = (set(p.lhs) | set(p.rhs)) - known
            if unknown:
                raise GrammarError(f"unknown symbols {sorted(unknown)} in {p}")

    @property
    def paper_productions(self) -> Tuple[Production, ...]:
        return tuple(p for p in self.productions if p.paper)

    def index(self, lhs: Sequence[str], rhs: Sequence[str]) -> int:
        target = (tuple(lhs), tuple(rhs))
        for i, p in enumerate(self.productions):
            if (p.lhs, p.rhs) == target:
                return i
        raise KeyError(f"no production {' '.join(lhs)} -> {' '.join(rhs) or EPS}")

    def is_terminal_form(self, form: Sequence[str]) -> bool:
        return all(s in self.terminals for s in form)

    @cached_property
    def _code(self) -> "_Compiled":
        return _Compiled(self)

    def to_text(self) -> str:
        lines = [f"%start {self.start}", "%terminals " + " ".join(sorted(self.terminals))]
        lines += ["%exclusive " + " ".join(sorted(g)) for g in self.exclusive]
        for p in self.productions:
            lines.append(str(p) if p.paper else f"%extra {p}")
        return "\n".join(lines) + "\n"


def parse_grammar(text: str) -> Grammar:
    """Read the plain-text production format.

    One production per line, ``LHS -> RHS`` with whitespace-separated tokens
    and ``eps`` for an empty right side. Directives: ``%start X``,
    ``%terminals a b ...`` (required), ``%exclusive x y ...`` and
    ``%extra LHS -> RHS`` for productions outside the base set. ``#`` starts
    a comment.
    """
    start = "S"
    terminals: Optional[Set[str]] = None
    exclusive: List[frozenset] = []
    raw: List[Tuple[Form, Form, bool]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        paper = True
        if line.startswith("%"):
            directive, _, rest = line.partition(" ")
            args = rest.split()
            if directive == "%start" and len(args) == 1:
                start = args[0]
                continue
            if directive == "%terminals" and args:
                terminals = set(args)
                continue
            if directive == "%exclusive" and args:
                exclusive.append(frozenset(args))
                continue
            if directive != "%extra":
                raise GrammarError(f"line {lineno}: bad directive {line!r}")
            paper, line = False, rest
        lhs_text, sep, rhs_text = line.partition("->")
        if not sep:
            raise GrammarError(f"line {lineno}: expected 'LHS -> RHS', got {line!r}")
        lhs = tuple(lhs_text.split())
        rhs = tuple(rhs_text.split())
        if rhs == (EPS,):
            rhs = ()
        if not lhs or EPS in lhs or EPS in rhs:
            raise GrammarError(f"line {lineno}: malformed production {line!r}")
        raw.append((lhs, rhs, paper))
    if terminals is None:
        raise GrammarError("missing %terminals directive")
    symbols = {start} | {s for lhs, rhs, _ in raw for s in lhs + rhs}
    return Grammar(
        terminals=frozenset(terminals),
        variables=frozenset(symbols - terminals),
        start=start,
        productions=tuple(Production(l, r, p) for l, r, p in raw),
        exclusive=tuple(exclusive),
    )


def load_grammar(path: str | Path) -> Grammar:
    return parse_grammar(Path(path).read_text(encoding="utf-8"))


def boolean_grammar() -> Grammar:
    """The 108-production grammar for the language of Boolean functions.

    A 109th production ``] -> eps`` is appended and flagged non-paper: the
    published productions leave the closing bracket behind. Erasing ``]``
    early only helps while ``L_h`` is the active marker; with ``R`` or ``L``
    the marker can never reach ``R ]`` again, so no new terminal strings
    appear.
    """
    T = TERMINALS
    ps: List[Production] = []
    ps += [Production(("S",), ("[", "R", i, "]")) for i in T]
    ps += [Production(("S",), (i,)) for i in T]
    ps += [Production(("R", i), (a, b, "R")) for i in T for a in T for b in T]
    ps += [Production((i, "L"), ("L", j)) for i in T for j in T]
    ps += [Production((i, "L_h"), ("L_h", j)) for i in T for j in T]
    ps += [Production(("R", "]"), ("L", "]")), Production(("R", "]"), ("L_h", "]"))]
    ps += [Production(("[", "L"), ("[", "R")), Production(("[", "L_h"), ())]
    ps.append(Production(("]",), (), paper=False))
    return Grammar(
        terminals=frozenset(T),
        variables=frozenset(VARIABLES),
        start="S",
        productions=tuple(ps),
        exclusive=(frozenset("["), frozenset("]"), frozenset(MARKERS)),
    )


def apply(form: Sequence[str], p: Production, pos: int) -> Form:
    form = tuple(form)
    k = len(p.lhs)
    if pos < 0 or form[pos:pos + k] != p.lhs:
        raise NoMatch(f"{' '.join(p.lhs)} does not occur at position {pos} of {' '.join(form)}")
    return form[:pos] + p.rhs + form[pos + k:]


def successors(form: Sequence[str], g: Grammar) -> List[Tuple[Form, int, int]]:
    """Every one-step rewrite as ``(new_form, production_index, position)``.

    Ordered by position, then production index.
    """
    form = tuple(form)
    out = []
    for pos in range(len(form)):
        for i, p in enumerate(g.productions):
            if form[pos:pos + len(p.lhs)] == p.lhs:
                out.append((form[:pos] + p.rhs + form[pos + len(p.lhs):], i, pos))
    return out


class _Compiled:
    """Single-character encoding of a grammar for the search loops."""

    def __init__(self, g: Grammar) -> None:
        tokens = sorted(g.terminals) + sorted(g.variables)
        self.enc = {t: chr(0x21 + k) if k < 94 else chr(0x100 + k) for k, t in enumerate(tokens)}
        self.dec = {c: t for t, c in self.enc.items()}
        self.terminal_chars = frozenset(self.enc[t] for t in g.terminals)
        # lhs string -> [(production index, rhs string, terminal delta)]
        self.by_lhs: Dict[str, List[Tuple[int, str, int]]] = {}
        self.lhs_lengths = sorted({len(p.lhs) for p in g.productions})
        monotone = True
        for i, p in enumerate(g.productions):
            delta = sum(s in g.terminals for s in p.rhs) - sum(s in g.terminals for s in p.lhs)
            monotone &= delta >= 0
            self.by_lhs.setdefault(self.encode(p.lhs), []).append((i, self.encode(p.rhs), delta))
        # Pruning on terminal count is only sound if no production loses terminals.
        self.terminal_monotone = monotone
        self.exclusive = [tuple(self.enc[s] for s in grp if s in self.enc) for grp in g.exclusive]

    def encode(self, form: Iterable[str]) -> str:
        return "".join(self.enc[s] for s in form)

    def decode(self, code: str) -> Form:
        return tuple(self.dec[c] for c in code)

    def expand(self, code: str) -> Iterator[Tuple[str, int, int, int]]:
        """Yield ``(child, production index, position, terminal delta)``."""
        n = len(code)
        by_lhs = self.by_lhs
        for pos in range(n):
            for k in self.lhs_lengths:
                if pos + k > n:
                    break
                hits = by_lhs.get(code[pos:pos + k])
                if hits:
                    head, tail = code[:pos], code[pos + k:]
                    for i, rhs, delta in hits:
                        yield head + rhs + tail, i, pos, delta

    def check(self, code: str) -> None:
        for grp in self.exclusive:
            if sum(code.count(c) for c in grp) > 1:
                raise InvariantViolation(
                    f"form {' '.join(self.decode(code))} holds more than one of "
                    f"{sorted(self.dec[c] for c in grp)}"
                )


@dataclass(frozen=True)
class Step:
    form: Form
    production: int
    position: int


@dataclass(frozen=True)
class Derivation:
    start: Form
    steps: Tuple[Step, ...]
    flagged: Tuple[int, ...] = field(default=())

    @property
    def forms(self) -> List[Form]:
        return [self.start] + [s.form for s in self.steps]

    @property
    def result(self) -> Form:
        return self.steps[-1].form if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)

    def verify(self, g: Grammar) -> None:
        """Re-apply every recorded step; raise if any fails to reproduce."""
        form = self.start
        for k, s in enumerate(self.steps, 1):
            nxt = apply(form, g.productions[s.production], s.position)
            if nxt != s.form:
                raise GrammarError(f"step {k} does not reproduce the recorded form")
            form = nxt

    def to_text(self) -> str:
        return " => ".join(" ".join(f) if f else EPS for f in self.forms)

    def to_json(self, g: Optional[Grammar] = None) -> str:
        steps = []
        for s in self.steps:
            item = {"form": list(s.form), "production": s.production, "position": s.position}
            if g is not None:
                p = g.productions[s.production]
                item["rule"] = str(p)
                item["paper"] = p.paper
            steps.append(item)
        return json.dumps({"start": list(self.start), "steps": steps})

    @classmethod
    def from_json(cls, text: str) -> "Derivation":
        data = json.loads(text)
        return cls(
            start=tuple(data["start"]),
            steps=tuple(Step(tuple(s["form"]), s["production"], s["position"])
                        for s in data["steps"]),
        )


@dataclass(frozen=True)
class SearchLimits:
    max_frontier: int = 2_000_000
    max_states: int = 6_000_000
    # Auxiliary symbols allowed on top of the target length.
    max_extra: int = 3


def derive(word: Sequence[str], g: Grammar,
           limits: SearchLimits = SearchLimits()) -> Optional[Derivation]:
    """Breadth-first search for a derivation of ``word`` from the start symbol.

    Returns the first shortest derivation in (position, production) order,
    or ``None`` if the pruned search space is exhausted without reaching
    ``word``. Raises :class:`SearchLimitExceeded` if the frontier outgrows
    ``limits.max_frontier``.
    """
    word = tuple(word)
    if not word:
        raise ValueError("word must be non-empty")
    if not g.is_terminal_form(word):
        raise ValueError(f"word contains non-terminals: {' '.join(word)}")
    c = g._code
    target = c.encode(word)
    max_tc = len(word) if c.terminal_monotone else None
    max_len = len(word) + limits.max_extra
    root = c.encode((g.start,))
    parent: Dict[str, Optional[Tuple[str, int, int]]] = {root: None}
    layer = [(root, 0)]
    while layer and target not in parent:
        nxt = []
        for code, tc in layer:
            for child, i, pos, delta in c.expand(code):
                if child in parent or len(child) > max_len:
                    continue
                ctc = tc + delta
                if max_tc is not None and ctc > max_tc:
                    continue
                c.check(child)
                parent[child] = (code, i, pos)
                nxt.append((child, ctc))
            if target in parent:
                break
        if len(nxt) > limits.max_frontier or len(parent) > limits.max_states:
            raise SearchLimitExceeded(
                f"search grew to {len(nxt)} frontier / {len(parent)} total forms, "
                f"beyond {limits}")
        layer = nxt
    if target not in parent:
        return None
    steps = []
    code = target
    while parent[code] is not None:
        prev, i, pos = parent[code]
        steps.append(Step(c.decode(code), i, pos))
        code = prev
    steps.reverse()
    return Derivation((g.start,), tuple(steps))


def derives(word: Sequence[str], g: Grammar, limits: SearchLimits = SearchLimits()) -> bool:
    return derive(word, g, limits) is not None


def generate(g: Grammar, max_len: int, limits: SearchLimits = SearchLimits()) -> Set[Form]:
    """All terminal strings of length 1..``max_len`` derivable from the start."""
    if not 0 <= max_len <= GENERATE_CAP:
        raise ValueError(f"max_len must be in [0, {GENERATE_CAP}], got {max_len}")
    c = g._code
    max_tc = max_len if c.terminal_monotone else None
    max_form = max_len + limits.max_extra
    root = c.encode((g.start,))
    seen = {root}
    stack = [(root, 0)]
    words = set()
    terminal_chars = c.terminal_chars
    while stack:
        code, tc = stack.pop()
        for child, _, _, delta in c.expand(code):
            if child in seen or len(child) > max_form:
                continue
            ctc = tc + delta
            if max_tc is not None and ctc > max_tc:
                continue
            c.check(child)
            seen.add(child)
            if len(seen) > limits.max_states:
                raise SearchLimitExceeded(f"more than {limits.max_states} forms visited")
            if ctc == len(child) and terminal_chars.issuperset(child):
                if 0 < len(child) <= max_len:
                    words.add(child)
                continue
            stack.append((child, ctc))
    return {c.decode(w) for w in words}


# The derivation printed with the grammar, as (lhs, rhs, position) steps.
PAPER_SCRIPT = (
    (("S",), ("[", "R", "0", "]"), 0),
    (("R", "0"), ("0", "3", "R"), 1),
    (("R", "]"), ("L_h", "]"), 3),
    (("3", "L_h"), ("L_h", "3"), 2),
    (("0", "L_h"), ("L_h", "0"), 1),
    (("[", "L_h"), (), 0),
    (("]",), (), 2),
)


def replay_paper_derivation(g: Optional[Grammar] = None) -> Derivation:
    """Replay the scripted derivation of ``0 3`` (the function f^2_12).

    The last step uses the non-paper ``] -> eps`` production; its index is
    reported in ``Derivation.flagged``.
    """
    g = g or boolean_grammar()
    form: Form = (g.start,)
    steps = []
    flagged = []
    for k, (lhs, rhs, pos) in enumerate(PAPER_SCRIPT):
        i = g.index(lhs, rhs)
        form = apply(form, g.productions[i], pos)
        steps.append(Step(form, i, pos))
        if not g.productions[i].paper:
            flagged.append(k)
    return Derivation((g.start,), tuple(steps), tuple(flagged))
