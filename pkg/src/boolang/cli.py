"""Command-line front end.

Exit codes: 0 success or agreement, 1 usage error, 2 oracle disagreement,
3 resource limit.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence

from . import core, grammar, tm

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE, EXIT_LIMIT = 0, 1, 2, 3
GRAMMAR_LEN_CAP = 4
CROSSCHECK_CAP = 6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def tm_word(tokens: Sequence[int]) -> List[str]:
    return [tm.INPUT_SYMBOLS[t] for t in tokens]


def grammar_word(tokens: Sequence[int]) -> tuple:
    return tuple(str(t) for t in tokens)


@dataclass
class MembershipReport:
    word: str
    by_length: bool
    by_tm: str
    by_grammar: Optional[bool]
    agree: bool
    limited: bool = False


def membership_report(tokens: Sequence[int], *, fuel: Optional[int] = None,
                      use_grammar: Optional[bool] = None,
                      g: Optional[grammar.Grammar] = None,
                      m: Optional[tm.TMachine] = None) -> MembershipReport:
    """Ask every available oracle whether ``tokens`` is in the language.

    The grammar search runs for words up to length 4 unless ``use_grammar``
    says otherwise. Oracles that hit a resource limit are left out of the
    agreement check and ``limited`` is set.
    """
    by_length = core.is_power_of_two(len(tokens))
    result = tm.run(m or tm.boolean_tm(), tm_word(tokens), fuel)
    verdicts = [by_length]
    limited = result.verdict is tm.Verdict.OUT_OF_FUEL
    if not limited:
        verdicts.append(result.accepted)
    by_grammar = None
    if use_grammar is None:
        use_grammar = len(tokens) <= GRAMMAR_LEN_CAP
    if use_grammar:
        try:
            by_grammar = grammar.derives(grammar_word(tokens), g or grammar.boolean_grammar())
        except grammar.SearchLimitExceeded:
            limited = True
        else:
            verdicts.append(by_grammar)
    return MembershipReport(
        word=core.format_tokens(tokens),
        by_length=by_length,
        by_tm=result.verdict.value,
        by_grammar=by_grammar,
        agree=len(set(verdicts)) == 1,
        limited=limited,
    )


def crosscheck(max_len: int, *, grammar_len: int = GRAMMAR_LEN_CAP,
               fuel: Optional[int] = None) -> Dict:
    """Run every oracle on every word of length 1..``max_len``."""
    if not 1 <= max_len <= CROSSCHECK_CAP:
        raise UsageError(f"max_len must be in [1, {CROSSCHECK_CAP}], got {max_len}")
    g = grammar.boolean_grammar()
    m = tm.boolean_tm()
    per_length = []
    failures = []
    limited = False
    for n in range(1, max_len + 1):
        words = members = bad = 0
        for tokens in itertools.product(range(4), repeat=n):
            r = membership_report(tokens, fuel=fuel, use_grammar=n <= grammar_len, g=g, m=m)
            words += 1
            members += r.by_length
            limited |= r.limited
            if not r.agree:
                bad += 1
                failures.append(asdict(r))
        per_length.append({"length": n, "words": words, "members": members,
                           "grammar": n <= grammar_len, "disagreements": bad})
    return {
        "max_len": max_len,
        "words": sum(p["words"] for p in per_length),
        "members": sum(p["members"] for p in per_length),
        "disagreements": len(failures),
        "limited": limited,
        "pass": not failures and not limited,
        "lengths": per_length,
        "failures": failures,
    }


def _function_record(f: core.BooleanFunction) -> Dict[str, str]:
    return {
        "rule": str(core.rule_number(f)),
        "bits": f.bitstring(),
        "tokens": core.format_tokens(core.to_symbol_string(f)),
    }


def _parse_as(text: str, kind: str) -> core.BooleanFunction:
    if kind == "rule":
        return core.from_rule(core.RuleNumber.parse(text))
    if kind == "bits":
        return core.parse_bits(text)
    if kind == "tokens":
        return core.from_symbol_string(core.parse_tokens(text))
    return core.parse_function(text)


def _emit(args, data, text: str) -> None:
    if args.format == "json":
        print(json.dumps(data))
    else:
        print(text)


def cmd_convert(args) -> int:
    f = _parse_as(args.function, args.kind)
    rec = _function_record(f)
    _emit(args, rec, f"rule   {rec['rule']}\nbits   {rec['bits']}\ntokens {rec['tokens']}")
    return EXIT_OK


def cmd_compose(args) -> int:
    top = core.from_rule(core.RuleNumber.parse(args.top))
    bottom = core.from_rule(core.RuleNumber.parse(args.bottom))
    f = core.concat_t(top, bottom)
    by_formula = core.index_of_concat(bottom.rule, top.rule, top.arity)
    data = {"rule": str(core.rule_number(f)), "formula": by_formula,
            "agree": by_formula == f.rule}
    _emit(args, data, f"{data['rule']}  (l*2^(2^n)+m = {by_formula})")
    return EXIT_OK if data["agree"] else EXIT_DISAGREE


def cmd_decompose(args) -> int:
    top, bottom = core.decompose(_parse_as(args.function, args.kind))
    data = {"top": str(core.rule_number(top)), "bottom": str(core.rule_number(bottom))}
    _emit(args, data, f"top    {data['top']}\nbottom {data['bottom']}")
    return EXIT_OK


def cmd_member(args) -> int:
    tokens = core.parse_tokens(args.word)
    use_grammar = True if args.force_grammar else None
    if args.force_grammar and len(tokens) > GRAMMAR_LEN_CAP:
        print(f"warning: grammar search on length {len(tokens)} may be slow",
              file=sys.stderr)
    r = membership_report(tokens, fuel=args.fuel, use_grammar=use_grammar)
    grammar_text = "-" if r.by_grammar is None else ("member" if r.by_grammar else "not member")
    text = (f"word     {r.word}\n"
            f"length   {'member' if r.by_length else 'not member'}\n"
            f"tm       {r.by_tm}\n"
            f"grammar  {grammar_text}\n"
            f"agree    {'yes' if r.agree else 'NO'}")
    _emit(args, asdict(r), text)
    if not r.agree:
        return EXIT_DISAGREE
    return EXIT_LIMIT if r.limited else EXIT_OK


def cmd_crosscheck(args) -> int:
    max_len = args.max_len if args.max_len is not None else 4
    grammar_len = max_len if args.force_grammar else min(max_len, GRAMMAR_LEN_CAP)
    report = crosscheck(max_len, grammar_len=grammar_len, fuel=args.fuel)
    lines = [f"{'len':>3} {'words':>6} {'members':>8} {'grammar':>8} {'disagree':>9}"]
    for p in report["lengths"]:
        lines.append(f"{p['length']:>3} {p['words']:>6} {p['members']:>8} "
                     f"{'yes' if p['grammar'] else 'no':>8} {p['disagreements']:>9}")
    lines.append(f"total {report['words']} words, {report['members']} members, "
                 f"{report['disagreements']} disagreements: "
                 f"{'PASS' if report['pass'] else 'FAIL'}")
    _emit(args, report, "\n".join(lines))
    if report["disagreements"]:
        return EXIT_DISAGREE
    return EXIT_LIMIT if report["limited"] else EXIT_OK


def cmd_derive(args) -> int:
    g = grammar.boolean_grammar()
    if args.paper:
        d = grammar.replay_paper_derivation(g)
    else:
        word = grammar_word(core.parse_tokens(args.word))
        d = grammar.derive(word, g)
        if d is None:
            _emit(args, {"word": args.word, "derivable": False},
                  f"{args.word} is not derivable")
            return EXIT_OK
    if args.format == "json":
        print(d.to_json(g))
    else:
        print(d.to_text())
    return EXIT_OK


def cmd_generate(args) -> int:
    max_len = args.max_len if args.max_len is not None else 4
    words = sorted(grammar.generate(grammar.boolean_grammar(), max_len),
                   key=lambda w: (len(w), w))
    words = ["".join(w) for w in words]
    _emit(args, {"max_len": max_len, "count": len(words), "words": words}, "\n".join(words))
    return EXIT_OK


def cmd_tm_run(args) -> int:
    m = tm.boolean_tm()
    tokens = core.parse_tokens(args.word) if args.word else ()
    result = tm.run(m, tm_word(tokens), args.fuel, trace=args.trace or args.format == "json")
    if args.format == "json":
        print(tm.trace_to_json(result))
    else:
        if args.trace:
            print(tm.format_trace(result, m))
        print(f"{result.verdict.value} after {result.steps} steps")
    return EXIT_LIMIT if result.verdict is tm.Verdict.OUT_OF_FUEL else EXIT_OK


def cmd_enumerate(args) -> int:
    records = [_function_record(f) for f in core.enumerate_functions(args.n)]
    text = "\n".join(f"{r['rule']:>10}  {r['bits']}  {r['tokens']}" for r in records)
    _emit(args, records, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--text", dest="format", action="store_const", const="text",
                        help="shorthand for --format text")
    common.add_argument("--fuel", type=int, default=None,
                        help="TM step budget (default 4*(len+2)^2)")
    common.add_argument("--max-len", type=int, default=None)

    parser = _Parser(prog="boolang", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    kinds = ("auto", "rule", "bits", "tokens")
    p = add("convert", cmd_convert, "show a function as rule, bits and tokens")
    p.add_argument("function", help="'n:R', a bitstring or a token string")
    p.add_argument("--as", dest="kind", choices=kinds, default="auto")

    p = add("compose", cmd_compose, "stack two rule forms (top = x1=0 half)")
    p.add_argument("top")
    p.add_argument("bottom")

    p = add("decompose", cmd_decompose, "split a function into its two halves")
    p.add_argument("function")
    p.add_argument("--as", dest="kind", choices=kinds, default="auto")

    p = add("member", cmd_member, "check a token word with every oracle")
    p.add_argument("word")
    p.add_argument("--force-grammar", action="store_true")

    p = add("crosscheck", cmd_crosscheck, "exhaustive oracle agreement")
    p.add_argument("max_len_pos", nargs="?", type=int, metavar="max_len")
    p.add_argument("--force-grammar", action="store_true")

    p = add("derive", cmd_derive, "grammar derivation of a token word")
    p.add_argument("word", nargs="?", default="03")
    p.add_argument("--paper", action="store_true",
                   help="replay the scripted derivation of 03")

    p = add("generate", cmd_generate, "words derivable up to a length")
    p.add_argument("max_len_pos", nargs="?", type=int, metavar="max_len")

    p = add("tm-run", cmd_tm_run, "run the Turing machine on a token word")
    p.add_argument("word", nargs="?", default="")
    p.add_argument("--trace", action="store_true")

    p = add("enumerate", cmd_enumerate, "list all functions of an arity")
    p.add_argument("n", type=int)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_len is None and getattr(args, "max_len_pos", None) is not None:
        args.max_len = args.max_len_pos
    try:
        return args.func(args)
    except (ValueError, UsageError) as e:
        print(f"boolang: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (grammar.SearchLimitExceeded, MemoryError) as e:
        print(f"boolang: resource limit: {e}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
