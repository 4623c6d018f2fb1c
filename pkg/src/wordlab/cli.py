"""Command line front end.

Every subcommand prints one certificate record per claim (``gen`` prints the
word itself).  Exit status: 0 holds / witness found, 1 violated / refuted,
2 inconclusive / exhausted, 3 usage error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .certificates import EXHAUSTED, HOLDS, INCONCLUSIVE, VIOLATED, WITNESS, Certificate, read_certificates
from .colorings import ColoringError, parse_coloring
from .factorizations import (
    NOTIONS,
    BudgetExceeded,
    ExtractionTooShort,
    Factorization,
    FactorizationError,
    find_monochromatic,
    find_sequential,
    verify_conditional,
    verify_notion,
    verify_shift_invariant,
)
from .factors import FactorAbsent, HorizonTooSmall, build_index
from .ramsey import (
    ComponentColoring,
    Exhausted,
    hindman_search,
    milliken_taylor_search,
    parse_int_coloring,
    shift_invariant_ultra,
)
from .sturmian import INCONCLUSIVE as _INC
from .sturmian import Inconclusive, NotSturmianInput, find_permuted_nonfactor, refute_ultra_on_subshift
from .words import Alphabet, WordError, parse_word

USAGE_ERROR = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _natural(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write records here instead of stdout")
    common.add_argument("--seed", type=int, help="reserved; every algorithm is deterministic")
    p = _Parser(prog="wordlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    add = sub.add_parser
    sub.add_parser = lambda *a, **kw: add(*a, parents=[common], **kw)

    g = sub.add_parser("gen", help="print a prefix of a word")
    g.add_argument("--word", required=True)
    g.add_argument("--len", type=_natural, required=True)

    pr = sub.add_parser("props", help="horizon-relative factor properties")
    pr.add_argument("--word", required=True)
    pr.add_argument("--horizon", type=_positive, required=True)
    pr.add_argument("--power-free", type=int, metavar="R")
    pr.add_argument("--overlap", action="store_true")
    pr.add_argument("--balanced", type=_positive, metavar="UP_TO")
    pr.add_argument("--reversal", type=_positive, metavar="UP_TO")
    pr.add_argument("--complexity", type=_positive, metavar="N")
    pr.add_argument("--special", type=_positive, metavar="N")
    pr.add_argument("--recurrence", metavar="U")
    pr.add_argument("--full", type=_positive, metavar="N")

    v = sub.add_parser("verify", help="check a factorization, or re-run a certificate file")
    v.add_argument("--certificate", help="re-check every record in this file")
    v.add_argument("--word")
    v.add_argument("--coloring")
    v.add_argument("--cuts", type=_int_list)
    v.add_argument("--notion", choices=NOTIONS + ("conditional",), default="mono")
    v.add_argument("--blocks", type=_positive, help="number of blocks m to check")
    v.add_argument("--k-max", type=_positive, default=None)
    v.add_argument("--j-max", type=_natural, default=0, help="also check shifts 1..j")
    v.add_argument("--index-horizon", type=_positive, help="horizon of the factor index (conditional)")
    v.add_argument("--budget", type=_positive, default=10**6)

    s = sub.add_parser("search", help="search for a monochromatic or sequential factorization")
    s.add_argument("--notion", choices=("mono", "sequential"), required=True)
    s.add_argument("--word", required=True)
    s.add_argument("--coloring", required=True)
    s.add_argument("--horizon", type=_positive, required=True)
    s.add_argument("--block-cap", type=_positive)
    s.add_argument("--color", type=int)

    rf = sub.add_parser("refute", help="refute an ultra factorization of a Sturmian suffix")
    rf.add_argument("--word", required=True)
    rf.add_argument("--power-free", type=_positive, required=True)
    rf.add_argument("--offset", type=_natural, default=0)
    rf.add_argument("--cuts", type=_int_list, required=True)
    rf.add_argument("--horizon", type=_positive, default=10**4)

    h = sub.add_parser("hindman", help="finite-sums witness search")
    h.add_argument("--coloring", required=True, help="mod:k[:table], const:c or power:<u>:<word coloring>")
    h.add_argument("--len", type=_positive, required=True)
    h.add_argument("--sum-max", type=_positive, required=True)
    h.add_argument("--restrict", help="file of integers the finite sums must stay in")
    h.add_argument("--node-budget", type=_positive, default=10**7)

    mt = sub.add_parser("milliken", help="block-sum k-set witness search")
    mt.add_argument("--arity", type=_positive, required=True)
    mt.add_argument("--coloring", action="append", required=True,
                    help="integer coloring per position (give once to reuse it for all)")
    mt.add_argument("--len", type=_positive, required=True)
    mt.add_argument("--sum-max", type=_positive, required=True)
    mt.add_argument("--node-budget", type=_positive, default=10**7)

    sf = sub.add_parser("sif", help="shift-invariant ultra factorization of a periodic word")
    sf.add_argument("--period", required=True)
    sf.add_argument("--coloring", required=True)
    sf.add_argument("--method", choices=("ih", "mt", "iterated-hindman", "milliken-taylor"), default="ih")
    sf.add_argument("--len", type=_positive, default=4)
    sf.add_argument("--sum-max", type=_positive, default=2000)
    sf.add_argument("--k-max", type=_positive)
    sf.add_argument("--node-budget", type=_positive, default=10**7)

    sw = sub.add_parser("sturmian-witness", help="permuted concatenation of blocks absent from a Sturmian word")
    sw.add_argument("--word", required=True)
    sw.add_argument("--power-free", type=_positive, required=True)
    grp = sw.add_mutually_exclusive_group(required=True)
    grp.add_argument("--cuts", type=_int_list)
    grp.add_argument("--blocks", help="comma-separated blocks")
    sw.add_argument("--offset", type=_natural, default=0)
    sw.add_argument("--horizon", type=_positive, default=10**4)
    return p


def _factorization(args) -> Factorization:
    if args.word is None or args.cuts is None:
        raise UsageError("--word and --cuts are required")
    return Factorization(parse_word(args.word), args.cuts)


def _cmd_gen(args) -> tuple[list[str], int]:
    x = parse_word(args.word)
    return [x.decode(x.prefix(args.len))], 0


def _cmd_props(args) -> list[Certificate]:
    x = parse_word(args.word)
    idx = build_index(x, args.horizon)
    verdicts = []
    if args.power_free is not None:
        verdicts.append(idx.is_r_power_free(args.power_free))
    if args.overlap:
        verdicts.append(idx.is_overlap_free())
    if args.balanced is not None:
        verdicts.append(idx.is_balanced(args.balanced))
    if args.reversal is not None:
        verdicts.append(idx.reversal_closed(args.reversal))
    if args.recurrence is not None:
        verdicts.append(idx.uniform_recurrence_bound(x.encode(args.recurrence)))
    if args.full is not None:
        verdicts.append(idx.full_complexity_check(args.full))
    certs = []
    for vd in verdicts:
        witness = None
        if vd.witness is not None:
            witness = {k: x.decode(w) if isinstance(w, bytes) else w for k, w in vd.witness.items()}
        params = {k: x.decode(w) if isinstance(w, bytes) else w for k, w in vd.params.items()}
        certs.append(Certificate(vd.check, HOLDS if vd.holds else VIOLATED, dict(params, horizon=vd.horizon),
                                 None, witness, {"status": vd.status}, {"word": x.spec}))
    if args.complexity is not None:
        n = args.complexity
        table = [idx.complexity(i) for i in range(1, n + 1)]
        certs.append(Certificate("complexity", HOLDS, {"n": n, "horizon": args.horizon}, None, None,
                                 {"complexity": table}, {"word": x.spec}))
    if args.special is not None:
        n = args.special
        right = [sorted(x.decode(w) for w in idx.right_special_factors(i)) for i in range(1, n + 1)]
        left = [sorted(x.decode(w) for w in idx.left_special_factors(i)) for i in range(1, n + 1)]
        certs.append(Certificate("special-factors", HOLDS, {"n": n, "horizon": args.horizon}, None, None,
                                 {"right": right, "left": left}, {"word": x.spec}))
    if not certs:
        raise UsageError("choose at least one property flag")
    return certs


def _cmd_verify(args) -> list[Certificate]:
    if args.certificate:
        return _recheck(Path(args.certificate).read_text())
    if args.coloring is None:
        raise UsageError("--coloring is required")
    f = _factorization(args)
    phi = parse_coloring(args.coloring)
    m = args.blocks or f.num_blocks
    k_max = args.k_max or min(m, 3)
    if args.notion == "conditional":
        idx = build_index(f.base, args.index_horizon or 10**4)
        return [verify_conditional(phi, f, idx, m, k_max, budget=args.budget)]
    if args.j_max:
        return [verify_shift_invariant(phi, f, m, args.j_max, args.notion, k_max, budget=args.budget)]
    return [verify_notion(phi, f, m, args.notion, k_max, budget=args.budget)]


def _cmd_search(args) -> list[Certificate]:
    x = parse_word(args.word)
    phi = parse_coloring(args.coloring)
    if args.notion == "mono":
        if args.block_cap is None:
            raise UsageError("--block-cap is required for --notion mono")
        return [find_monochromatic(phi, x, args.horizon, args.block_cap, args.color)]
    return [find_sequential(phi, x, args.horizon)]


def _sturmian_setup(args):
    x = parse_word(args.word)
    return x, build_index(x, args.horizon)


def _cmd_refute(args) -> list[Certificate]:
    x, idx = _sturmian_setup(args)
    return [refute_ultra_on_subshift(x, args.power_free, args.offset, args.cuts, idx)]


def _cmd_sturmian_witness(args) -> list[Certificate]:
    x, idx = _sturmian_setup(args)
    if args.blocks is not None:
        blocks = [x.encode(b) for b in args.blocks.split(",")]
    else:
        y = x.shift(args.offset) if args.offset else x
        blocks = Factorization(y, args.cuts).blocks()
    got = find_permuted_nonfactor(blocks, x, args.power_free, idx)
    bounds = {"r": args.power_free, "horizon": args.horizon, "blocks": len(blocks)}
    specs = {"word": x.spec, "blocks": [x.decode(b) for b in blocks]}
    if isinstance(got, Inconclusive):
        return [Certificate("permuted-nonfactor", _INC, bounds, None, None,
                            {"reason": got.reason, "trace": list(got.trace), **got.details}, specs)]
    witness = {"k": got.k, "indices": list(got.indices), "sigma": list(got.sigma),
               "order": list(got.order), "word": x.decode(got.word)}
    return [Certificate("permuted-nonfactor", WITNESS, bounds, None, witness, {"trace": list(got.trace)}, specs)]


def _read_ints(path: str) -> list[int]:
    return [int(t) for t in Path(path).read_text().replace(",", " ").split()]


def _cmd_hindman(args) -> list[Certificate]:
    psi = parse_int_coloring(args.coloring)
    restrict = _read_ints(args.restrict) if args.restrict else None
    got = hindman_search(psi, args.len, args.sum_max, restrict, node_budget=args.node_budget)
    bounds = {"q": args.len, "s_max": args.sum_max, "restricted": restrict is not None}
    specs = {"coloring": psi.spec}
    if isinstance(got, Exhausted):
        return [Certificate("hindman", EXHAUSTED, bounds, None, None, {"nodes": got.nodes}, specs)]
    return [Certificate("hindman", WITNESS, bounds, got.color,
                        {"sequence": list(got.sequence), "sums": sorted(set(got.sums))},
                        {"sums_checked": len(got.sums)}, specs)]


def _cmd_milliken(args) -> list[Certificate]:
    k = args.arity
    parts = [parse_int_coloring(c) for c in args.coloring]
    if len(parts) == 1:
        parts = parts * k
    if len(parts) != k:
        raise UsageError(f"give one --coloring, or exactly {k}")
    got = milliken_taylor_search(ComponentColoring(parts), k, args.len, args.sum_max, node_budget=args.node_budget)
    bounds = {"k": k, "q": args.len, "s_max": args.sum_max}
    specs = {"coloring": [p.spec for p in parts]}
    if isinstance(got, Exhausted):
        return [Certificate("milliken-taylor", EXHAUSTED, bounds, None, None, {"nodes": got.nodes}, specs)]
    return [Certificate("milliken-taylor", WITNESS, bounds, got.color, {"sequence": list(got.sequence)},
                        {"families_checked": got.families}, specs)]


def _cmd_sif(args) -> list[Certificate]:
    a = Alphabet.from_text(args.period)
    u = a.encode(args.period)
    phi = parse_coloring(args.coloring)
    _, cert = shift_invariant_ultra(u, phi, args.len, args.sum_max, args.method, a,
                                    k_max=args.k_max, node_budget=args.node_budget)
    return [cert]


COMMANDS = {
    "props": _cmd_props,
    "verify": _cmd_verify,
    "search": _cmd_search,
    "refute": _cmd_refute,
    "hindman": _cmd_hindman,
    "milliken": _cmd_milliken,
    "sif": _cmd_sif,
    "sturmian-witness": _cmd_sturmian_witness,
}

_ERRORS = (UsageError, WordError, ColoringError, FactorizationError, HorizonTooSmall, FactorAbsent,
           NotSturmianInput, BudgetExceeded, ExtractionTooShort, ValueError, OSError)


def _strip_out(argv: Sequence[str]) -> list[str]:
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
        elif a == "--out":
            skip = True
        elif not a.startswith("--out="):
            out.append(a)
    return out


def execute(argv: Sequence[str]) -> tuple[list[str], int]:
    """Run a command; return the output lines and the exit status."""
    args = build_parser().parse_args(list(argv))
    if args.command == "gen":
        return _cmd_gen(args)
    certs = COMMANDS[args.command](args)
    if not (args.command == "verify" and args.certificate):
        command = _strip_out(argv)
        for c in certs:
            c.specs["command"] = command
    status = max(c.exit_code for c in certs)
    return [c.to_line() for c in certs], status


def _recheck(text: str) -> list[Certificate]:
    """Re-run each stored command and compare content hashes."""
    out = []
    for cert, stored in read_certificates(text):
        intact = stored == cert.content_hash()
        command = cert.specs.get("command")
        if not intact:
            verdict, reason = VIOLATED, "stored hash does not match the record"
        elif not command:
            verdict, reason = INCONCLUSIVE, "record carries no command to re-run"
        else:
            lines, _ = execute(command)
            again = {Certificate.from_line(l).content_hash() for l in lines}
            same = cert.content_hash() in again
            verdict, reason = (HOLDS, "reproduced") if same else (VIOLATED, "re-run produced a different record")
        out.append(Certificate("recheck", verdict, {}, None, None,
                               {"claim": cert.claim, "verdict": cert.verdict, "sha256": stored, "reason": reason}))
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
        lines, status = execute(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else USAGE_ERROR
    except _ERRORS as e:
        print(f"wordlab: error: {e}", file=sys.stderr)
        return USAGE_ERROR
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
