"""``fq``: command-line front end.

Exit status: 0 when the question was decided, 2 when the answer is Unknown
within the budget, 1 on any error.  With ``--json`` every command prints a
single JSON object with ``verdict`` and ``certificate`` fields, which
``fq verify`` can re-check.
"""
from __future__ import annotations

import argparse
import io
import json
import os
import sys
from contextlib import redirect_stdout
from typing import Optional, Sequence

from .core.derivation import check_derivation
from .core.presentation import Presentation, PresentationSyntaxError, parse_presentation, parse_word
from .core.verdict import DEFAULT_MAX_ORDER, Budget, Outcome, Verdict
from .core.words import Word, format_word, free_reduce
from .dyson import (
    GENERATORS as DYSON_GENERATORS,
    DysonContext,
    DysonError,
    check_dyson_separation,
    dyson_oracle,
    lan_presentation,
    ModUnknown,
    normal_form,
    quotient_check_dyson,
    rf_witness,
    separate_in_finite,
)
from .finite.cayley import CayleyError, CapExceeded, MarkedGroup, evaluate_word, is_conjugate_in_finite, is_marked_quotient
from .finite.marked import load_cayley, marked_isomorphic, table_presentation
from .mckinsey import (
    ConjugacyClass,
    FgSubgroup,
    SetDescriptor,
    Singleton,
    ZFinite,
    ZProgressionUnion,
    check_separation,
    conjugacy_check,
    depth,
    free_abelian_oracle,
    free_group_oracle,
    separate,
    wp_mckinsey,
)
from .profinite.lemma_b import b_member, check_b_term, prog_subset_b
from .profinite.oracle import BComplement, ZSetOracle, parse_zset
from .quotients import marked_quotients, normal_to_quotient, schreier_kernel_generators
from .serialize import factors_from_json, group_from_json, to_jsonable

EXIT_DECIDED, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        raise UsageError(message)


# -- input parsing ---------------------------------------------------------------

def _pres(text: str) -> Presentation:
    try:
        return parse_presentation(text)
    except PresentationSyntaxError as exc:
        raise UsageError(f"--pres: {exc}") from None


def _word(text: str, gens: Sequence[str], flag: str) -> Word:
    try:
        return parse_word(text, gens)
    except (PresentationSyntaxError, ValueError) as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _words(text: str, gens: Sequence[str], flag: str) -> list[Word]:
    return [_word(t, gens, flag) for t in text.split(";") if t.strip()]


def _group(path: str, flag: str = "--group") -> MarkedGroup:
    try:
        with open(path) as fh:
            return load_cayley(fh.read())
    except OSError as exc:
        raise UsageError(f"{flag}: {exc}") from None
    except (ValueError, CayleyError) as exc:
        raise UsageError(f"{flag}: invalid Cayley JSON: {exc}") from None


def parse_descriptor(text: str, gens: Sequence[str]) -> SetDescriptor:
    """``singleton:W``, ``conj:W``, ``subgroup:W1;W2``, ``zprog:0/4,2/6``, ``zfinite:1,5``."""
    kind, _, arg = text.partition(":")
    if kind == "singleton":
        return Singleton(_word(arg, gens, "descriptor"))
    if kind == "conj":
        return ConjugacyClass(_word(arg, gens, "descriptor"))
    if kind == "subgroup":
        return FgSubgroup(_words(arg, gens, "descriptor"))
    if kind == "zprog":
        pairs = []
        for t in arg.split(","):
            a, _, b = t.partition("/")
            pairs.append((int(a), int(b)))
        return ZProgressionUnion(pairs)
    if kind == "zfinite":
        return ZFinite([int(t) for t in arg.split(",") if t.strip()])
    raise UsageError(f"unknown set descriptor {text!r}")


def _zset(text: str) -> ZSetOracle:
    try:
        return parse_zset(text)
    except ValueError as exc:
        raise UsageError(f"--set: {exc}") from None


def _budget(args) -> Budget:
    return Budget(steps=args.budget, max_order=args.max_order)


def _named(m: MarkedGroup, names: Sequence[str]) -> MarkedGroup:
    return MarkedGroup(m.group, m.marking, tuple(names))


def _name_groups(obj, names):
    if isinstance(obj, MarkedGroup):
        return _named(obj, names) if obj.n == len(names) else obj
    if isinstance(obj, dict):
        return {k: _name_groups(v, names) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_name_groups(v, names) for v in obj]
    return obj


# -- output ---------------------------------------------------------------------

class Result:
    def __init__(self, verdict: str, certificate=None, text: str = "", names: Sequence[str] = ()):
        self.verdict = verdict
        self.certificate = certificate
        self.text = text
        self.names = tuple(names)

    @property
    def exit_code(self) -> int:
        return EXIT_UNKNOWN if self.verdict == "unknown" else EXIT_DECIDED


def _from_verdict(v: Verdict, names: Sequence[str], text: str = "") -> Result:
    return Result(v.outcome.value, v.certificate, text or v.outcome.value, names)


# -- commands -------------------------------------------------------------------

def cmd_enum(args) -> Result:
    p = _pres(args.pres)
    q = marked_quotients(p, args.max_order, cap=max(DEFAULT_MAX_ORDER, args.max_order))
    lines = [f"{len(q)} marked quotients of order <= {args.max_order}"]
    for m in q:
        lines.append(f"  order {m.order}: marking {m.marking}")
    cert = {"kind": "quotient_list", "count": len(q), "entries": list(q.entries)}
    return Result("yes", cert, "\n".join(lines), p.generators)


def cmd_check(args) -> Result:
    p = _pres(args.pres)
    m = _group(args.group)
    if m.n != p.n_gens:
        raise UsageError(f"--group: marking has {m.n} entries, presentation has {p.n_gens} generators")
    for i, r in enumerate(p.relators):
        if evaluate_word(m, r) != 0:
            cert = {"kind": "failing_relator", "relator": list(r), "index": i}
            return Result("no", cert, f"no: relator {format_word(r, p.generators)} fails", p.generators)
    return Result("yes", {"kind": "all_relators_hold"}, "yes: the marking is a quotient", p.generators)


def cmd_wp(args) -> Result:
    p = _pres(args.pres)
    w = _word(args.word, p.generators, "--word")
    return _from_verdict(wp_mckinsey(p, w, _budget(args), cap=max(DEFAULT_MAX_ORDER, args.max_order)), p.generators)


def cmd_separate(args) -> Result:
    p = _pres(args.pres)
    a, b = parse_descriptor(args.a, p.generators), parse_descriptor(args.b, p.generators)
    w = _word(args.word, p.generators, "--word")
    try:
        v = separate(p, a, b, w, _budget(args), cap=max(DEFAULT_MAX_ORDER, args.max_order))
    except ValueError as exc:
        raise UsageError(f"--a/--b: {exc}") from None
    return _from_verdict(v, p.generators)


def cmd_conj(args) -> Result:
    p = _pres(args.pres)
    x = _word(args.x, p.generators, "--x")
    y = _word(args.y, p.generators, "--y")
    return _from_verdict(conjugacy_check(p, x, y, _budget(args), cap=max(DEFAULT_MAX_ORDER, args.max_order)),
                         p.generators)


def cmd_kernel_gens(args) -> Result:
    m = _group(args.group)
    if m.n != args.ngens:
        raise UsageError(f"--group: marking has {m.n} entries, --ngens is {args.ngens}")
    gens = schreier_kernel_generators(args.ngens, m)
    names = m.names or [chr(ord("a") + i) for i in range(m.n)]
    text = "\n".join(format_word(w, names) for w in gens)
    return Result("yes", {"kind": "schreier_generators", "generators": gens, "group": m}, text, names)


def cmd_n2q(args) -> Result:
    p = _pres(args.pres)
    normal = _words(args.normal, p.generators, "--normal")
    return _from_verdict(normal_to_quotient(p, normal, _budget(args), cap=max(DEFAULT_MAX_ORDER, args.max_order)),
                         p.generators)


def cmd_depth(args) -> Result:
    p = _pres(args.pres)
    if args.oracle == "free":
        oracle = free_group_oracle
    elif args.oracle == "abelian":
        oracle = free_abelian_oracle
    else:
        if args.set is None:
            raise UsageError("--oracle dyson needs --set")
        if p.n_gens != 4:
            raise UsageError("--oracle dyson needs a presentation on a, ah, e, eh")
        oracle = dyson_oracle(DysonContext(_zset(args.set)))
    try:
        table = depth(p, oracle, args.max_len, args.max_order, cap=max(DEFAULT_MAX_ORDER, args.max_order))
    except CapExceeded as exc:
        raise UsageError(f"--max-order: {exc}") from None
    verdict = "unknown" if any(v is None for v in table.entries.values()) else "yes"
    return Result(verdict, {"kind": "depth_table", "rows": table.rows()}, table.to_text(), p.generators)


def cmd_zset(args) -> Result:
    s = _zset(args.set)
    budget = Budget(steps=args.budget)
    if args.op == "member":
        x = _need_int(args.x, "--x")
        v = s.member(x, budget)
        verdict = "unknown" if v is None else ("yes" if v else "no")
        return Result(verdict, {"kind": "membership", "set": s.spec, "x": x}, verdict)
    if args.op == "mod":
        n = _need_int(args.n, "--n")
        if n < 1:
            raise UsageError("--n must be >= 1")
        residues, complete = s.mod_n(n, budget)
        cert = {"kind": "residues", "set": s.spec, "n": n, "residues": sorted(residues), "complete": complete}
        return Result("yes" if complete else "unknown", cert, " ".join(map(str, sorted(residues))))
    if args.op == "witness":
        x = _need_int(args.x, "--x")
        if s.member(x, budget):
            raise UsageError(f"--x: {x} is in the set; it has no separating modulus")
        b = s.witness(x, budget)
        if b is None:
            return Result("unknown", {"kind": "no_witness", "set": s.spec, "x": x}, "no witness")
        return Result("yes", {"kind": "witness", "set": s.spec, "x": x, "modulus": b}, str(b))
    # prog-subset
    a, b = _need_int(args.a, "--a"), _need_int(args.b, "--b")
    if b < 1:
        raise UsageError("--b must be >= 1")
    if not isinstance(s, BComplement):
        raise UsageError("prog-subset runs the containment procedure for B; use --set lemmaB:f=...")
    ans = prog_subset_b(a, b, s.f)
    verdict = "yes" if ans else "no"
    return Result(verdict, {"kind": "containment_in_B", "a": a % b, "b": b, "f": s.f.name}, verdict)


def _need_int(v, flag):
    if v is None:
        raise UsageError(f"{flag} is required")
    return v


def cmd_dyson(args) -> Result:
    ctx = DysonContext(_zset(args.set), Budget(steps=args.budget))
    names = DYSON_GENERATORS
    if args.op in ("nf", "wp", "rf-witness", "separate"):
        if args.word is None:
            raise UsageError("--word is required")
        w = _word(args.word, names, "--word")
    if args.op == "nf":
        nf = normal_form(w, ctx)
        return Result("yes", {"kind": "normal_form", "syllables": nf}, json.dumps(nf.to_json()), names)
    if args.op == "wp":
        trivial = normal_form(w, ctx).is_trivial
        verdict = "yes" if trivial else "no"
        return Result(verdict, {"kind": "normal_form", "syllables": normal_form(w, ctx)}, verdict, names)
    if args.op == "rf-witness":
        n = rf_witness(w, ctx)
        return Result("yes", {"kind": "rf_witness", "N": n}, str(n), names)
    if args.op == "separate":
        v = separate_in_finite(w, ctx, args.max_order, cap=max(DEFAULT_MAX_ORDER, args.max_order))
        return _from_verdict(v, names)
    if args.op == "quotient-check":
        if args.group is None:
            raise UsageError("--group is required")
        m = _group(args.group)
        if m.n != 4:
            raise UsageError("--group: a Dyson marking needs entries for a, ah, e, eh")
        return _from_verdict(quotient_check_dyson(m, ctx), names)
    # lan-pres
    n = _need_int(args.n, "--n")
    try:
        p = lan_presentation(ctx, n)
    except ModUnknown as exc:
        cert = {"kind": "mod_unknown", "n": n, "undecided": list(exc.undecided)}
        return Result("unknown", cert, f"unknown: A mod {n} is not decided at {list(exc.undecided)}", names)
    return Result("yes", {"kind": "presentation", "n": n, "presentation": p}, p.format(), names)


# -- verify ---------------------------------------------------------------------

def _ctx_from(doc) -> DysonContext:
    return DysonContext(parse_zset(doc["argv_set"]), Budget(steps=doc["argv_budget"]))


def _check_doc(doc: dict) -> bool:
    """Independent re-check of a JSON document produced by ``--json``."""
    cmd = doc["command"]
    cert = doc.get("certificate") or {}
    verdict = doc["verdict"]
    inp = doc["input"]
    kind = cert.get("kind")
    if verdict == "unknown":
        return kind in ("budget", "mod_unknown", "no_witness", "depth_table", "residues")
    if cmd in ("wp", "separate", "conj", "n2q", "check", "enum"):
        p = parse_presentation(inp["pres"])
    if kind == "derivation":
        from_p = parse_presentation(cert["presentation"])
        return check_derivation(from_p, Word(inp["word"]), factors_from_json(cert["factors"]))
    if kind == "quotient" and cmd == "wp":
        m = group_from_json(cert["group"])
        return is_marked_quotient(m, p) and evaluate_word(m, Word(inp["word"])) != 0
    if kind == "quotient" and cmd == "conj":
        m = group_from_json(cert["group"])
        ix, iy = evaluate_word(m, Word(inp["x"])), evaluate_word(m, Word(inp["y"]))
        return is_marked_quotient(m, p) and not is_conjugate_in_finite(m.group, ix, iy)
    if kind == "conjugator":
        c, x, y = Word(cert["conjugator"]), Word(inp["x"]), Word(inp["y"])
        return check_derivation(p, free_reduce(c + y + c.inverse() + x.inverse()), factors_from_json(cert["factors"]))
    if kind == "separating_quotient":
        a = parse_descriptor(inp["a"], p.generators)
        b = parse_descriptor(inp["b"], p.generators)
        v = Verdict(Outcome(verdict), {"group": group_from_json(cert["group"])})
        return check_separation(p, a, b, Word(inp["word"]), v)
    if kind == "finite_quotient":
        m = group_from_json(cert["group"])
        p2 = parse_presentation(cert["presentation"])
        if not is_marked_quotient(m, p2):
            return False
        rels = table_presentation(m).relators
        proofs = cert["derivations"]
        return len(proofs) == len(rels) and all(
            Word(r) == rel and check_derivation(p2, rel, factors_from_json(f)) for (r, f), rel in zip(proofs, rels))
    if kind == "all_relators_hold" or kind == "failing_relator" and cmd == "check":
        m = group_from_json(inp["group"])
        return is_marked_quotient(m, p) == (verdict == "yes")
    if kind == "quotient_list":
        entries = [group_from_json(e) for e in cert["entries"]]
        distinct = all(not marked_isomorphic(entries[i], entries[j])
                       for i in range(len(entries)) for j in range(i))
        return distinct and len(entries) == cert["count"] and all(is_marked_quotient(m, p) for m in entries)
    if kind == "schreier_generators":
        m = group_from_json(cert["group"])
        return all(evaluate_word(m, Word(w)) == 0 for w in cert["generators"])
    if kind == "dyson_separation":
        ctx = _ctx_from(inp)
        c = dict(cert, group=group_from_json(cert["group"]))
        return check_dyson_separation(Word(inp["word"]), ctx, Verdict(Outcome.YES, c))
    if kind == "failing_relator" and cmd == "dyson":
        m = group_from_json(inp["group"])
        return evaluate_word(m, Word(cert["relator"])) != 0
    if kind == "witness":
        s = parse_zset(cert["set"])
        x, b = cert["x"], cert["modulus"]
        lo = x - b * 200
        return all(s.member(y) is not True for y in range(lo, x + b * 201, b))
    if kind == "membership" and cmd == "zset" and cert["set"].startswith("lemmaB"):
        s = parse_zset(cert["set"])
        v = b_member(cert["x"], s.f, Budget())
        if v.outcome is Outcome.YES:
            return verdict == "no" and check_b_term(cert["x"], s.f, v.certificate)
    return None  # fall back to re-running


def cmd_verify(args) -> Result:
    try:
        text = sys.stdin.read() if args.file == "-" else open(args.file).read()
        doc = json.loads(text)
    except (OSError, ValueError) as exc:
        raise UsageError(f"verify: cannot read certificate document: {exc}") from None
    for key in ("command", "argv", "verdict", "input"):
        if key not in doc:
            raise UsageError(f"verify: document lacks the {key!r} field")
    ok = _check_doc(doc)
    how = "certificate"
    if ok is None:
        # no standalone certificate: reproduce the run and compare
        buf = io.StringIO()
        with redirect_stdout(buf):
            run(doc["argv"])
        again = json.loads(buf.getvalue())
        ok = again["verdict"] == doc["verdict"] and again["certificate"] == doc["certificate"]
        how = "rerun"
    if not ok:
        return Result("no", {"kind": "verification", "method": how, "valid": False}, "certificate REJECTED")
    return Result("yes", {"kind": "verification", "method": how, "valid": True}, "certificate ok")


# -- parser -----------------------------------------------------------------------

def _threads(value: Optional[int]) -> int:
    if value is None:
        env = os.environ.get("FQ_THREADS")
        if env is None:
            return 1
        try:
            value = int(env)
        except ValueError:
            raise UsageError(f"FQ_THREADS must be an integer, got {env!r}") from None
    if value < 1:
        raise UsageError("--threads must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, allow_abbrev=False)
    common.add_argument("--json", action="store_true", help="print one JSON object")
    common.add_argument("--threads", type=int, default=None, help="worker cap (default: FQ_THREADS or 1)")
    common.add_argument("--budget", type=int, default=10_000, help="search steps")
    common.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER, help="group-order cap")

    top = _Parser(prog="fq", allow_abbrev=False, description="finite quotients, word problems and Dyson's groups")
    sub = top.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, **kw):
        sp = sub.add_parser(name, parents=[common], allow_abbrev=False, **kw)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("enum", cmd_enum, help="marked quotients up to an order")
    sp.add_argument("--pres", required=True)
    sp = add("check", cmd_check, help="is a marked group a quotient")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--group", required=True)
    sp = add("wp", cmd_wp, help="word problem by the McKinsey search")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--word", required=True)
    sp = add("separate", cmd_separate, help="decide g in A or in B")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--word", required=True)
    sp = add("conj", cmd_conj, help="conjugacy of two words")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    sp = add("kernel-gens", cmd_kernel_gens, help="Schreier generators of a kernel")
    sp.add_argument("--ngens", type=int, required=True)
    sp.add_argument("--group", required=True)
    sp = add("n2q", cmd_n2q, help="finite quotient from normal generators")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--normal", required=True)
    sp = add("depth", cmd_depth, help="depth function table")
    sp.add_argument("--pres", required=True)
    sp.add_argument("--oracle", choices=("free", "abelian", "dyson"), required=True)
    sp.add_argument("--max-len", type=int, required=True)
    sp.add_argument("--set", default=None)
    sp = add("zset", cmd_zset, help="effective subsets of Z")
    sp.add_argument("op", choices=("member", "mod", "witness", "prog-subset"))
    sp.add_argument("--set", required=True)
    sp.add_argument("--x", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--a", type=int)
    sp.add_argument("--b", type=int)
    sp = add("dyson", cmd_dyson, help="Dyson's groups L(A)")
    sp.add_argument("op", choices=("nf", "wp", "rf-witness", "separate", "quotient-check", "lan-pres"))
    sp.add_argument("--set", required=True)
    sp.add_argument("--word")
    sp.add_argument("--group")
    sp.add_argument("--n", type=int)
    sp = add("verify", cmd_verify, help="re-check a JSON document")
    sp.add_argument("file", help="JSON file from --json, or - for stdin")
    return top


def _input_record(args) -> dict:
    """What verify needs to rebuild the question without re-parsing argv."""
    rec = {}
    for key in ("pres", "a", "b", "set", "op", "n", "x", "normal", "ngens"):
        v = getattr(args, key, None)
        if v is not None:
            rec[key] = v
    gens = None
    if getattr(args, "pres", None):
        gens = parse_presentation(args.pres).generators
    elif args.command == "dyson":
        gens = DYSON_GENERATORS
    for key in ("word", "x", "y"):
        v = getattr(args, key, None)
        if isinstance(v, str) and gens is not None:
            rec[key] = list(parse_word(v, gens))
    if getattr(args, "group", None):
        with open(args.group) as fh:
            rec["group"] = json.loads(fh.read())
    if args.command == "dyson":
        rec["argv_set"] = args.set
        rec["argv_budget"] = args.budget
    return rec


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    want_json = "--json" in argv
    try:
        args = parser.parse_args(argv)
        _threads(args.threads)
        if args.budget < 0:
            raise UsageError("--budget must be >= 0")
        if args.max_order < 1:
            raise UsageError("--max-order must be >= 1")
        res = args.fn(args)
        inp = _input_record(args) if args.command != "verify" else {}
    except UsageError as exc:
        return _fail(f"usage error: {exc}", want_json)
    except (DysonError, CayleyError, CapExceeded, ValueError) as exc:
        return _fail(f"error: {exc}", want_json)
    if args.json:
        cert = to_jsonable(_name_groups(res.certificate, res.names)) if res.names else to_jsonable(res.certificate)
        doc = {"command": args.command, "argv": argv, "input": inp, "verdict": res.verdict, "certificate": cert}
        print(json.dumps(doc))
    else:
        print(res.text)
    if args.command == "verify" and res.verdict != "yes":
        return EXIT_ERROR
    return res.exit_code


def _fail(message: str, want_json: bool) -> int:
    if want_json:
        print(json.dumps({"verdict": "error", "certificate": None, "error": message}))
    print(message, file=sys.stderr)
    return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
