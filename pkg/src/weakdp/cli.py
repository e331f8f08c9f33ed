"""Command-line front end: ``weakdp <command> [options]``.

Every command builds a JSON payload; human output is rendered from that
payload.  Exit codes: 0 success, 1 verification mismatch, 2 usage or input
error.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .catalog import BudgetExceededError, EnumerationResult, enumerate_configurations, verify
from .descent import GaloisAction, invariant_rank, is_minimal, reflect
from .lattice import DivisorClass, LatticeModel, get_model
from .lines import lines
from .minimality import NotApplicableError, alpha_beta, cylinder_verdict, is_quasi_minimal
from .notation import literal, parse_class, parse_classes, symbol
from .roots import Configuration, ade_type, enumerate_minus_two_classes
from .tables import resolve_label

SCHEMA = "weakdp/{}/v1"


class UsageError(Exception):
    """Bad flags or malformed input; reported with exit status 2."""


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    stdout: str = ""
    stderr: str = ""


def _load_json(arg: str, what: str):
    """Inline JSON wins; otherwise ``arg`` is read as a file path."""
    try:
        return json.loads(arg)
    except json.JSONDecodeError:
        pass
    path = Path(arg)
    if not path.is_file():
        raise UsageError(f"{what}: not valid JSON and no such file: {arg}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: malformed JSON in {arg}: {exc}") from None


def _model_and_roots(args) -> tuple[LatticeModel, list[DivisorClass]]:
    doc = _load_json(args.roots, "--roots") if args.roots else []
    if isinstance(doc, dict):
        degree = args.degree if args.degree is not None else doc.get("degree")
        shape = args.shape or doc.get("shape")
        items = doc.get("roots", [])
    elif isinstance(doc, list):
        degree, shape, items = args.degree, args.shape, doc
    else:
        raise UsageError("--roots must be a JSON object with a 'roots' key or a list")
    if degree is None:
        raise UsageError("a degree is required (--degree or a 'degree' key)")
    model = get_model(int(degree), shape)
    if not isinstance(items, list):
        raise UsageError("'roots' must be a list")
    return model, parse_classes(model, items)


def _config(args) -> Configuration:
    model, roots = _model_and_roots(args)
    return Configuration.of(model, roots)


def _entry(model: LatticeModel, c: DivisorClass) -> dict:
    return {"vector": list(c.coeffs), "symbol": symbol(model, c)}


def _lit(model: LatticeModel, c: DivisorClass | None):
    return None if c is None else literal(model, c)


def _type_label(config: Configuration) -> tuple[str, int, bool]:
    ade = ade_type(config)
    n = len(lines(config))
    label = resolve_label(config.degree, ade, n)
    return (label if label is not None else ade), n, label is not None


# -- commands: each returns (payload, exit code) ---------------------------------


def cmd_lines(args):
    cfg = _config(args)
    ls = lines(cfg).lines
    return {"degree": cfg.degree, "count": len(ls), "lines": [_entry(cfg.model, c) for c in ls]}, 0


def cmd_roots(args):
    model = get_model(args.degree, args.shape)
    rs = enumerate_minus_two_classes(model)
    return {"degree": model.degree, "count": len(rs), "roots": [_entry(model, c) for c in rs]}, 0


def cmd_classify(args):
    cfg = _config(args)
    label, n, found = _type_label(cfg)
    return {"degree": cfg.degree, "type": label, "ade": ade_type(cfg), "lines": n, "in_table": found}, 0


def cmd_quasi_minimal(args):
    cfg = _config(args)
    rep = is_quasi_minimal(cfg)
    label, n, _ = _type_label(cfg)
    out = {
        "degree": cfg.degree,
        "type": label,
        "lines": n,
        "quasi_minimal": rep.verdict,
        "type_check": rep.type_check,
        "witness": _lit(cfg.model, rep.witness),
        "failing_lines": len(rep.failing_lines),
    }
    if args.alpha is not None:
        ab = alpha_beta(cfg, args.alpha)
        out["alpha_beta"] = {
            "alpha": ab.alpha,
            "beta": ab.beta,
            "beta_lines": [literal(cfg.model, c) for c in ab.beta_lines],
            "disjoint": ab.disjoint,
        }
    return out, 0


def cmd_minimal(args):
    cfg = _config(args)
    if not args.galois:
        raise UsageError("minimal requires --galois")
    doc = _load_json(args.galois, "--galois")
    gens = doc.get("generators") if isinstance(doc, dict) else None
    if not isinstance(gens, list):
        raise UsageError("--galois must be an object with a 'generators' list")
    action = GaloisAction(cfg.model, tuple(gens), cfg)
    res = is_minimal(cfg, action)
    m = cfg.model
    return {
        "degree": cfg.degree,
        "minimal": res.minimal,
        "invariant_rank": invariant_rank(action),
        "witness": None if res.witness is None else [literal(m, c) for c in res.witness],
        "orbits": [[literal(m, c) for c in orb] for orb in res.orbits],
    }, 0


def _enum_payload(res: EnumerationResult) -> dict:
    unmatched = set(id(f) for f in res.unmatched())
    return {
        "degree": res.degree,
        "complete": res.complete,
        "visited": res.visited,
        "fingerprints": [
            {
                "ade": f.ade,
                "lines": f.line_count,
                "type": resolve_label(res.degree, f.ade, f.line_count) if f.ade else "",
                "in_table": id(f) not in unmatched,
                "roots": [literal(f.representative.model, r) for r in f.representative.roots],
            }
            for f in res.entries
        ],
        "missing_rows": [r.singularities for r in res.missing_rows()],
    }


def cmd_enumerate(args):
    try:
        res = enumerate_configurations(args.degree, args.max_roots, args.budget, args.shape)
    except BudgetExceededError as exc:
        payload = _enum_payload(exc.partial)
        payload["error"] = str(exc)
        return payload, 2
    return _enum_payload(res), 0


def cmd_verify(args):
    reports = verify(args.tables)
    ok = all(r.passed for r in reports)
    return {"passed": ok, "reports": [r.as_dict() for r in reports], "_text": [r.render() for r in reports]}, 0 if ok else 1


def cmd_verdict(args):
    try:
        v = cylinder_verdict(args.degree, args.minimal, args.section, args.rational_point, args.shape)
    except NotApplicableError as exc:
        raise UsageError(str(exc)) from None
    return {"degree": args.degree, "a1_cylinder": v.a1_cylinder, "a2_plane": v.a2_plane}, 0


def cmd_reflect(args):
    model = get_model(args.degree, args.shape)
    root = parse_class(model, _maybe_json(args.root))
    cls = parse_class(model, _maybe_json(args.cls))
    img = reflect(model, root, cls)
    return {"degree": model.degree, "root": list(root.coeffs), "class": list(cls.coeffs), "image": _entry(model, img)}, 0


def _maybe_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


# -- rendering ---------------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, list):
        return "[" + ",".join(_fmt(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v).lower() if isinstance(v, bool) else str(v)


def _sym(entry: dict) -> str:
    return entry["symbol"] or _fmt(entry["vector"])


def render(command: str, p: dict) -> str:
    if command in ("lines", "roots"):
        items = p[command]
        return "\n".join([f"degree={p['degree']} count={p['count']}"] + [f"  {_sym(e)}" for e in items])
    if command == "classify":
        return f"degree={p['degree']} type={p['type'] or 'smooth'} lines={p['lines']}"
    if command == "quasi-minimal":
        out = [
            f"degree={p['degree']} type={p['type'] or 'smooth'} lines={p['lines']}",
            f"quasi_minimal={_fmt(p['quasi_minimal'])} type_check={_fmt(p['type_check'])} "
            f"witness={_fmt(p['witness'])} failing_lines={p['failing_lines']}",
        ]
        if "alpha_beta" in p:
            ab = p["alpha_beta"]
            out.append(
                f"alpha={ab['alpha']} beta={ab['beta']} disjoint={_fmt(ab['disjoint'])} "
                f"lines={' '.join(_fmt(x) for x in ab['beta_lines'])}"
            )
        return "\n".join(out)
    if command == "minimal":
        out = [f"minimal={_fmt(p['minimal'])} invariant_rank={p['invariant_rank']} witness={_fmt(p['witness'])}"]
        out += ["  orbit " + " ".join(_fmt(x) for x in orb) for orb in p["orbits"]]
        return "\n".join(out)
    if command == "enumerate":
        out = [f"degree={p['degree']} complete={_fmt(p['complete'])} visited={p['visited']}"]
        for f in p["fingerprints"]:
            flag = "" if f["in_table"] or not f["ade"] else "  [no table row]"
            out.append(f"  {f['type'] or 'smooth'} lines={f['lines']}{flag}")
        if p["missing_rows"]:
            out.append("missing: " + " ".join(p["missing_rows"]))
        return "\n".join(out)
    if command == "verify":
        return "\n".join(p["_text"]) + f"\n{'PASS' if p['passed'] else 'FAIL'}"
    if command == "verdict":
        return f"a1_cylinder={_fmt(p['a1_cylinder'])} a2_plane={_fmt(p['a2_plane'])}"
    if command == "reflect":
        return _sym(p["image"])
    raise ValueError(command)


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weakdp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, fn, help_, roots=True, degree_required=False):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--degree", type=int, required=degree_required)
        p.add_argument("--shape", choices=["BlowupOfP2", "QuadricP1xP1", "Hirzebruch2"])
        if roots:
            p.add_argument("--roots", help="inline JSON or a path: {\"roots\": [...]} or a list")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.set_defaults(func=fn)
        return p

    add("lines", cmd_lines, "list the lines of a configuration")
    add("classify", cmd_classify, "ADE type and line count")
    add("quasi-minimal", cmd_quasi_minimal, "quasi-minimality check").add_argument("--alpha", type=int)
    add("minimal", cmd_minimal, "minimality under a Galois action").add_argument(
        "--galois", help="inline JSON or a path: {\"generators\": [...]}"
    )
    p = add("enumerate", cmd_enumerate, "enumerate configurations", roots=False, degree_required=True)
    p.add_argument("--max-roots", type=int)
    p.add_argument("--budget", type=int, help="node budget (required below degree 4)")
    p = add("verify", cmd_verify, "replay the shipped tables", roots=False)
    p.add_argument("--tables", default="all", choices=["all", "table1", "table2", "table3", "appendixA"])
    p = add("verdict", cmd_verdict, "cylinder verdict for a minimal surface", roots=False, degree_required=True)
    p.add_argument("--minimal", action="store_true")
    p.add_argument("--section", action="store_true")
    p.add_argument("--rational-point", action="store_true")
    add("roots", cmd_roots, "list the positive (-2)-classes", roots=False, degree_required=True)
    p = add("reflect", cmd_reflect, "apply a Weyl reflection", roots=False, degree_required=True)
    p.add_argument("--root", required=True)
    p.add_argument("--class", dest="cls", required=True)
    return parser


def run(argv: list[str] | None = None) -> CommandResult:
    parser = build_parser()
    out_buf, err_buf = io.StringIO(), io.StringIO()
    try:
        with redirect_stdout(out_buf), redirect_stderr(err_buf):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return CommandResult(code, out_buf.getvalue(), err_buf.getvalue())
    try:
        payload, code = args.func(args)
    except (UsageError, ValueError, KeyError, TypeError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        return CommandResult(2, "", f"{parser.format_usage()}weakdp {args.command}: error: {msg}\n")
    text = payload.pop("_text", None)
    if args.json:
        payload = {"schema": SCHEMA.format(args.command), **payload}
        out = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        if text is not None:
            payload["_text"] = text
        out = render(args.command, payload) + "\n"
    err = payload.get("error", "") + "\n" if code == 2 and "error" in payload else ""
    return CommandResult(code, out, err)


def main(argv: list[str] | None = None) -> int:
    res = run(argv)
    sys.stdout.write(res.stdout)
    sys.stderr.write(res.stderr)
    return res.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
