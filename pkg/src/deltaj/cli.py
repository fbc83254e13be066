"""Command-line front end.

Commands: ``info``, ``ideals``, ``classify``, ``verify``, ``search``.
Every command builds one JSON-safe record; ``--format json`` prints it and
``--format text`` prints the same data flattened to ``path = value`` lines
(``#`` lines are a human summary and carry no data).

Exit codes: 0 success (for ``verify``: every requested check passed or was
vacuous), 1 domain error (bad ring spec, ideal, expansion or template) or a failed
check, 2 usage error (bad flags, unknown check id).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from deltaj.classify import ideal_profile
from deltaj.expansion import ExpansionError, ExpansionFn, from_table, resolve_expansion
from deltaj.harness import CorpusConfig, generate_corpus, run_check
from deltaj.ideals import all_ideals, ideal_from_names
from deltaj.parse import make_ring, split_top_level
from deltaj.ring import FiniteRing, RingError, verify_ring_axioms


class UsageError(Exception):
    pass


# text rendering -----------------------------------------------------------------

_PLAIN_KEY = re.compile(r"[A-Za-z0-9_\-]+")
_TOKEN = re.compile(r'\.?([A-Za-z0-9_\-]+)|\[(\d+)\]|\[("(?:[^"\\]|\\.)*")\]')


def _key(prefix: str, k: str) -> str:
    if _PLAIN_KEY.fullmatch(k):
        return f"{prefix}.{k}" if prefix else k
    return f"{prefix}[{json.dumps(k, ensure_ascii=False)}]"


def flatten(record, prefix: str = "") -> list[str]:
    """``path = json`` lines; containers become nested paths, empty ones are kept.

    Keys outside ``[A-Za-z0-9_-]`` are written as ``["key"]``.
    """
    if isinstance(record, dict) and record:
        out = []
        for k in sorted(record):
            out += flatten(record[k], _key(prefix, k))
        return out
    if isinstance(record, list) and record:
        out = []
        for i, v in enumerate(record):
            out += flatten(v, f"{prefix}[{i}]")
        return out
    return [f"{prefix} = {json.dumps(record, ensure_ascii=False, sort_keys=True)}"]


def _path_tokens(path: str) -> list:
    toks, pos = [], 0
    while pos < len(path):
        m = _TOKEN.match(path, pos)
        if not m:
            raise ValueError(f"bad path {path!r}")
        name, idx, quoted = m.groups()
        toks.append(name if name is not None else int(idx) if idx is not None else json.loads(quoted))
        pos = m.end()
    return toks


def unflatten(text: str):
    """Inverse of :func:`flatten` (summary lines starting with ``#`` are skipped)."""
    root: dict = {}
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        path, _, value = line.partition(" = ")
        toks = _path_tokens(path)
        node = root
        for here, nxt in zip(toks, toks[1:]):
            want = [] if isinstance(nxt, int) else {}
            if isinstance(here, int):
                while len(node) <= here:
                    node.append(None)
                if node[here] is None:
                    node[here] = want
                node = node[here]
            else:
                node = node.setdefault(here, want)
        last = toks[-1]
        if isinstance(last, int):
            while len(node) <= last:
                node.append(None)
        node[last] = json.loads(value)
    return root


def _emit(record: dict, fmt: str, summary: list[str] = ()) -> None:
    if fmt == "json":
        print(json.dumps(record, indent=2, sort_keys=True, ensure_ascii=False))
        return
    for line in summary:
        print("# " + line)
    for line in flatten(record):
        print(line)


# argument resolution --------------------------------------------------------------

def _ring(spec: str) -> FiniteRing:
    return make_ring(spec)


def _ideal(R: FiniteRing, text: str):
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    names = [g for g in split_top_level(body.replace(" ", ",")) if g] if body else ["0"]
    return ideal_from_names(R, names)


def _table_file(R: FiniteRing, path: str) -> ExpansionFn:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise RingError(f"cannot read expansion table {path!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise RingError(f"expansion table {path!r} is not JSON: {exc.msg}") from None
    label = f"table:{Path(path).name}"
    if isinstance(data, dict):
        data = data.get("table")
    if not isinstance(data, list):
        raise RingError("expansion table must be a list, or an object with a 'table' list")
    if data and all(isinstance(x, list) and len(x) == 2 for x in data):
        # [[generators of I, generators of δ(I)], ...]; unlisted ideals map to themselves
        mapping = {}
        for src, dst in data:
            mapping[ideal_from_names(R, src or ["0"])] = ideal_from_names(R, dst or ["0"])
        return from_table(R, mapping, label)
    if not all(isinstance(x, int) for x in data):
        raise RingError("expansion table entries must be lattice indices or [ideal, image] pairs")
    return from_table(R, data, label)


def resolve_delta(R: FiniteRing, selector: str) -> ExpansionFn:
    if selector.startswith("table:"):
        return _table_file(R, selector[len("table:") :])
    return resolve_expansion(R, selector)


# commands -----------------------------------------------------------------------

def _ideal_rec(I) -> dict:
    return {"label": I.label(), "members": I.names()}


def cmd_info(args) -> tuple[dict, list[str], int]:
    R = _ring(args.ring)
    lat = all_ideals(R)
    ax = verify_ring_axioms(R)
    rec = {
        "ring_spec": R.spec,
        "kind": R.kind,
        "order": R.order,
        "axioms_pass": ax.passed,
        "units": [R.name(u) for u, v in enumerate(R.inverses) if v is not None],
        "ideal_count": len(lat),
        "maximal_ideals": [lat[i].label() for i in lat.maximal],
        "jacobson_radical": _ideal_rec(lat[lat.jacobson_index]),
        "nilradical": _ideal_rec(lat[lat.nilradical_index]),
        "quasi_local": lat.is_quasi_local,
    }
    summary = [f"{R.spec}: order {R.order}, {len(lat)} ideals, J(R) = {rec['jacobson_radical']['label']}"]
    return rec, summary, 0


def cmd_ideals(args) -> tuple[dict, list[str], int]:
    R = _ring(args.ring)
    lat = all_ideals(R)
    rows = [
        {"index": i, "label": I.label(), "members": I.names(), "size": len(I.members)}
        for i, I in enumerate(lat)
    ]
    summary = [f"{R.spec}: {len(lat)} ideals in canonical order"]
    summary += [f"{r['index']:>3}  {r['label']:<16} {{{', '.join(r['members'])}}}" for r in rows]
    return {"ring_spec": R.spec, "ideals": rows}, summary, 0


def cmd_classify(args) -> tuple[dict, list[str], int]:
    R = _ring(args.ring)
    I = _ideal(R, args.ideal)
    deltas = [resolve_delta(R, s) for s in (args.delta or ["delta0", "delta1"])]
    prof = ideal_profile(I, deltas)
    rec = prof.to_record()
    rec["ideal"] = I.names()
    # pairs (a, b) and member lists alike are reported by element name
    rec["witnesses"] = {k: [R.name(x) for x in v] for k, v in rec["witnesses"].items()}
    rec["expansions"] = {d.label: deltas[n](I).label() for n, d in enumerate(deltas)}
    summary = [f"{I.label()} in {R.spec}"]
    for k in sorted(k for k in rec if isinstance(rec[k], bool)):
        w = rec["witnesses"].get(k)
        summary.append(f"{k:<28} {str(rec[k]).lower()}" + (f"  witness {tuple(w)}" if w else ""))
    return rec, summary, 0


def _corpus_config(args) -> CorpusConfig:
    over = {
        "zn_max": args.zn_max,
        "product_max": args.product_max,
        "idealization_max": args.idealization_max,
        "subring_max": args.subring_max,
        "family_max": args.family_max,
        "max_witnesses": args.max_witnesses,
    }
    for fam in ("products", "polys", "idealizations", "quotients"):
        if getattr(args, f"no_{fam}"):
            over[fam] = False
    if args.expansions:
        over["expansions"] = tuple(args.expansions)
    if args.colon_reading:
        over["colon_readings"] = tuple(args.colon_reading)
    return CorpusConfig.from_overrides(**over)


def cmd_verify(args) -> tuple[dict, list[str], int]:
    from deltaj.checks import CHECKS

    if args.all:
        ids = list(CHECKS)
    elif args.check:
        ids = [c.upper() for c in args.check]
    else:
        raise UsageError("verify needs --check ID or --all")
    unknown = [c for c in ids if c not in CHECKS]
    if unknown:
        raise UsageError(f"unknown check id {unknown[0]!r} (known: {', '.join(CHECKS)})")
    corpus = generate_corpus(_corpus_config(args))
    reports = [run_check(c, corpus) for c in ids]
    rec = {
        "corpus_rings": len(corpus.specs),
        "passed": all(r.passed for r in reports),
        "reports": [r.to_record(args.timings) for r in reports],
    }
    summary = [f"{len(corpus.specs)} corpus rings"]
    for r in reports:
        line = f"{r.check}  {r.outcome.upper():<8} tested {r.instances_tested:>7}  filtered {r.hypothesis_filtered:>7}"
        if args.timings:
            line += f"  {r.runtime:.2f}s"
        summary.append(line)
        for f in r.forms:
            tag = "required" if f.required else "reported"
            summary.append(f"    {f.name:<26} {tag:<9} {f.outcome:<15} {f.counterexample_count} counterexamples")
    return rec, summary, 0 if rec["passed"] else 1


def cmd_search(args) -> tuple[dict, list[str], int]:
    from deltaj.search import search_counterexample

    target = [_ring(s) for s in args.ring] if args.ring else generate_corpus(_corpus_config(args))
    hits = search_counterexample(args.template, target)
    for h in hits:
        h.pop("facts")
    rec = {"template": args.template, "count": len(hits), "hits": hits}
    summary = [f"{len(hits)} hits"] + [
        f"{h['ring_spec']}  {h['ideal']['label']}" + (f"  [{h['expansion']}]" if h["expansion"] else "") for h in hits
    ]
    return rec, summary, 0


# parser -------------------------------------------------------------------------

def _add_corpus_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("corpus")
    g.add_argument("--zn-max", type=int, help="largest n for Z_n (default 24)")
    g.add_argument("--product-max", type=int, help="largest order of Z_a x Z_b (default 24)")
    g.add_argument("--idealization-max", type=int, help="largest idealization order (default 32)")
    g.add_argument("--subring-max", type=int, help="largest ring whose subrings are enumerated (default 16)")
    g.add_argument("--family-max", type=int, help="largest ideal family for intersection checks (default 3)")
    g.add_argument("--max-witnesses", type=int, help="counterexamples kept per form (default 200)")
    for fam in ("products", "polys", "idealizations", "quotients"):
        g.add_argument(f"--no-{fam}", action="store_true", help=f"leave {fam} out of the corpus")
    g.add_argument("--expansions", nargs="+", choices=("delta0", "delta1", "plus"), help="registered expansion kinds")
    g.add_argument("--colon-reading", action="append", choices=("literal", "corrected"),
                   help="readings of the printed colon hypothesis to report (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deltaj",
        description="Finite commutative ring workbench for ideal expansions and δ-J-ideals.",
        epilog="exit codes: 0 ok, 1 domain error or failed check, 2 usage error",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("info", help="order, units, maximal ideals and radicals of a ring")
    p.add_argument("--ring", required=True, help="ring spec, e.g. Z12, Z2xZ4, Z2[x]/(x^2), Z4(+)Z2")
    common(p)

    p = sub.add_parser("ideals", help="list all ideals in canonical order")
    p.add_argument("--ring", required=True)
    common(p)

    p = sub.add_parser("classify", help="classification flags of one ideal")
    p.add_argument("--ring", required=True)
    p.add_argument("--ideal", required=True, help="generators, e.g. '4' or '2,x'")
    p.add_argument("--delta", action="append",
                   help="delta0 | delta1 | plusM:<gens> | table:<file> (repeatable; default delta0 and delta1)")
    common(p)

    p = sub.add_parser("verify", help="run named checks over the generated corpus")
    p.add_argument("--check", action="append", help="check id such as CHK-01 (repeatable)")
    p.add_argument("--all", action="store_true", help="run every check")
    p.add_argument("--timings", action="store_true", help="include per-check runtime (makes output non-reproducible)")
    _add_corpus_flags(p)
    common(p)

    p = sub.add_parser("search", help="list ideals matching a flag template")
    p.add_argument("--template", required=True, help="e.g. 'proper ∧ ¬superfluous ∧ delta_J_ideal(δ₀)'")
    p.add_argument("--ring", action="append", help="search these rings instead of the corpus (repeatable)")
    _add_corpus_flags(p)
    common(p)
    return parser


COMMANDS = {"info": cmd_info, "ideals": cmd_ideals, "classify": cmd_classify, "verify": cmd_verify, "search": cmd_search}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rec, summary, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"deltaj: usage error: {exc}", file=sys.stderr)
        return 2
    except (RingError, ExpansionError, ValueError) as exc:
        print(f"deltaj: error: {exc}", file=sys.stderr)
        return 1
    _emit(rec, args.format, summary)
    return code


if __name__ == "__main__":
    sys.exit(main())
