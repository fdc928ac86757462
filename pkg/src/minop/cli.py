"""Command line interface: ``minop <command> [options]``.

Every command prints one JSON document (or a plain table with
``--format table``).  The exit status is 0 when every check passed, 1 when
a check failed and 2 for bad input or refused sizes.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import action, algebras, homology, operad, orders, resolution, verify
from .hochschild import AInfinityStructure, CapExhausted, Cochain, GradedSpace
from .trees import PlanarTree

OPERAD_CHOICES = ("M", "P-M", "P-As")

# largest arity handled without --max-arity, and basis sizes for refusals
DEFAULT_LIMITS = {"M": 4, "P-M": 3, "P-As": 4}
KNOWN_SIZES = {
    "M": {1: 1, 2: 4, 3: 48, 4: 960, 5: 26880},
    "P-M": {2: 4, 3: 144, 4: 8640},
    "P-As": {2: 2, 3: 30, 4: 744},
}


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    options: dict = field(default_factory=dict)
    seed: int = 0
    fmt: str = "json"


def _size_hint(name, n) -> str:
    size = KNOWN_SIZES.get(name, {}).get(n)
    if size is None:
        return "size unknown (more than any tabulated case)"
    return f"basis of size {size}"


def _check_limit(name, n, max_arity):
    limit = DEFAULT_LIMITS[name] if max_arity is None else max_arity
    if n > limit:
        raise InputError(
            f"refusing {name} at arity {n}: {_size_hint(name, n)}; the limit is {limit} (raise it with --max-arity)"
        )
    if n < (1 if name == "M" else 2):
        raise InputError(f"arity {n} is too small for {name}")


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_basis(o) -> tuple:
    name, n = o["operad"], o["arity"]
    _check_limit(name, n, o.get("max_arity"))
    if name == "M":
        elems = operad.basis(n)
        deg = operad.degree
    else:
        R = name[2:]
        elems = resolution.generators(R, n) if o.get("generators") else resolution.basis_P(R, n)
        deg = lambda m: m.degree  # noqa: E731
    counts = {}
    for e in elems:
        counts[deg(e)] = counts.get(deg(e), 0) + 1
    rep = {
        "operad": name,
        "arity": n,
        "count": len(elems),
        "by_degree": {str(k): v for k, v in sorted(counts.items(), reverse=True)},
        "elements": [e.encoding for e in elems],
    }
    return rep, True


def cmd_betti(o) -> tuple:
    name, n = o["operad"], o["arity"]
    _check_limit(name, n, o.get("max_arity"))
    table = verify.betti_table(name, n, method=o.get("method", "exact"))
    return table.to_json(), True


def cmd_export(o) -> tuple:
    name, n = o["operad"], o["arity"]
    _check_limit(name, n, o.get("max_arity"))
    c = verify.complex_for(name, n)
    out = {"operad": name, "arity": n, "degrees": {}}
    for k in sorted(c.bases, reverse=True):
        entries = []
        for j, col in sorted(c.matrices.get(k, {}).items()):
            for i, v in sorted(col.items()):
                entries.append([i, j, str(v)])
        out["degrees"][str(k)] = {"basis": [b.encoding for b in c.bases[k]], "differential": entries}
    return out, True


def cmd_verify(o) -> tuple:
    suite = o["suite"]
    seed = o["seed"]
    cap = o["cap"]
    runs = []
    names = list(verify.SUITES) if suite == "all" else [suite]
    for s in names:
        if s == "d-squared":
            if suite == "all" or o.get("operad") is None:
                targets = [("M", 4), ("P-As", 4), ("P-M", 3)]
            else:
                targets = [(o["operad"], o["arity"] or DEFAULT_LIMITS[o["operad"]])]
            for name, n in targets:
                _check_limit(name, n, o.get("max_arity"))
                runs.append(verify.suite_d_squared(name, n))
        elif s == "leibniz":
            runs.append(verify.suite_leibniz(seed=seed))
        elif s == "operad-axioms":
            runs.append(verify.suite_operad_axioms(n_assoc=o.get("assoc_arity") or 5))
        elif s == "gerstenhaber":
            runs.append(verify.suite_gerstenhaber(cap=cap, seed=seed))
        elif s == "action-axioms":
            runs.append(verify.suite_action_axioms(cap=cap, seed=seed))
        elif s == "dg-compat":
            runs.append(verify.suite_dg_compat(cap=cap, seed=seed))
        elif s == "orders":
            runs.append(verify.suite_orders(n_max=o.get("arity") or 4))
    ok = all(r["passed"] for r in runs)
    return {"passed": ok, "seed": seed, "reports": runs}, ok


def _load_algebra(o):
    if o.get("builtin"):
        return algebras.TEST_ALGEBRAS[o["builtin"]](cap=o["cap"])
    if not o.get("algebra"):
        raise InputError("act needs --algebra FILE or --builtin NAME")
    obj = _load_json(o["algebra"])
    try:
        space = GradedSpace.from_json(obj["space"])
        m = Cochain.from_json(space, obj["m"])
        return AInfinityStructure(m, truncated=bool(obj.get("truncated", True)))
    except (KeyError, TypeError) as exc:
        raise InputError(f"algebra file: missing field {exc}") from None
    except ValueError as exc:
        raise InputError(f"algebra file: {exc}") from None


def cmd_act(o) -> tuple:
    A = _load_algebra(o)
    if o.get("tree"):
        try:
            tree = PlanarTree.decode(o["tree"])
        except ValueError as exc:
            raise InputError(f"tree: {exc}") from None
    elif o.get("tree_file"):
        try:
            tree = PlanarTree.from_json(_load_json(o["tree_file"]))
        except ValueError as exc:
            raise InputError(f"tree file: {exc}") from None
    else:
        raise InputError("act needs --tree ENCODING or --tree-file FILE")
    if not tree.is_admissible():
        raise InputError(f"{tree} is not admissible")
    if not o.get("cochains"):
        raise InputError("act needs --cochains FILE (a JSON list of cochains)")
    raw = _load_json(o["cochains"])
    if not isinstance(raw, list):
        raise InputError("cochains file must hold a JSON list")
    try:
        gammas = [Cochain.from_json(A.space, c) for c in raw]
        result = action.act(tree, gammas, A)
    except CapExhausted as exc:
        raise InputError(f"cap exhausted: {exc}") from None
    except ValueError as exc:
        raise InputError(f"cochains: {exc}") from None
    return {"tree": tree.encoding, "result": result.to_json()}, True


def cmd_poset(o) -> tuple:
    window = None
    if o.get("min_degree") is not None or o.get("max_degree") is not None:
        window = (
            o["min_degree"] if o.get("min_degree") is not None else -10**9,
            o["max_degree"] if o.get("max_degree") is not None else 10**9,
        )
    try:
        rep = orders.poset_report(o["arity"], window)
    except orders.OrderError as exc:
        raise InputError(str(exc)) from None
    return rep, True


COMMANDS = {
    "basis": cmd_basis,
    "betti": cmd_betti,
    "verify": cmd_verify,
    "act": cmd_act,
    "poset": cmd_poset,
    "export": cmd_export,
}


def run(config: RunConfig) -> tuple:
    """Execute a command; returns ``(exit status, report dict)``."""
    opts = dict(config.options, seed=config.seed)
    try:
        rep, ok = COMMANDS[config.command](opts)
    except InputError as exc:
        return 2, {"error": str(exc)}
    return (0 if ok else 1), rep


# ---------------------------------------------------------------------------
# argument parsing and output


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    p = argparse.ArgumentParser(prog="minop", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def sized(sp, required=True):
        sp.add_argument("--operad", choices=OPERAD_CHOICES, required=required)
        sp.add_argument("--arity", type=int, required=required)
        sp.add_argument("--max-arity", type=int, default=None, help="override the size guard")

    b = sub.add_parser("basis", parents=[common], help="enumerate a basis")
    sized(b)
    b.add_argument("--generators", action="store_true", help="only meta-trees with all edges finite")

    bt = sub.add_parser("betti", parents=[common], help="Betti numbers of M_n or P_n")
    sized(bt)
    bt.add_argument("--method", choices=("exact", "modp"), default="exact")

    ex = sub.add_parser("export", parents=[common], help="basis and differential matrices as JSON")
    sized(ex)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", choices=("all",) + tuple(verify.SUITES), default="all")
    sized(v, required=False)
    v.add_argument("--cap", type=int, default=5, help="arity cap for cochains")
    v.add_argument("--assoc-arity", type=int, default=None, help="label bound for associativity")

    a = sub.add_parser("act", parents=[common], help="evaluate T(gamma_1, ..., gamma_n)")
    a.add_argument("--algebra", help="algebra JSON: {space, m, truncated}")
    a.add_argument("--builtin", choices=tuple(algebras.TEST_ALGEBRAS), help="use a built-in test algebra")
    a.add_argument("--tree", help="tree encoding such as '*(1,2)'")
    a.add_argument("--tree-file", help="tree JSON file")
    a.add_argument("--cochains", help="JSON list of cochains")
    a.add_argument("--cap", type=int, default=5, help="arity cap for built-in algebras")

    po = sub.add_parser("poset", parents=[common], help="the meta-tree poset of P_M")
    po.add_argument("--arity", type=int, required=True)
    po.add_argument("--min-degree", type=int)
    po.add_argument("--max-degree", type=int)
    return p


def _table(rep) -> str:
    if "reports" in rep:
        lines = []
        for r in rep["reports"]:
            for c in r["checks"]:
                status = "PASS" if c["passed"] else "FAIL"
                lines.append(f"{status}  {c['id']:<40} checked={c['checked']} failures={c['failures']}")
        return "\n".join(lines)
    if "error" in rep:
        return "error: " + rep["error"]
    if all(isinstance(v, int) for v in rep.values()):
        return "\n".join(f"{k:>4}  {v}" for k, v in rep.items())
    return json.dumps(rep, indent=2)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    opts = {k: v for k, v in vars(args).items() if k not in ("command", "seed", "format")}
    config = RunConfig(args.command, opts, args.seed, args.format)
    status, rep = run(config)
    out = sys.stdout if status != 2 else sys.stderr
    if config.fmt == "table":
        print(_table(rep), file=out)
    else:
        print(json.dumps(rep), file=out)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
