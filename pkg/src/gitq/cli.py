"""Command-line front end.

Every subcommand produces a :class:`CommandResult`; ``--json`` prints it as a
versioned document, otherwise a short human-readable summary is printed.
Exit codes: 0 for ok/wall/empty, 2 for usage or input errors, 3 when an
internal consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .chambers import WallReport, enumerate_chambers, n5_label_of, stable_sets_of
from .core import InputError, InvariantError, parse_points, parse_weights
from .hilbert import hilbert_table, relation_trials
from .stability import GenericReport, Status, classify_configuration, generic_stability
from .toric import local_model, parse_inverted
from .walls import Kind, classify_quotient_n6, wall_crossing_report

SCHEMA = "gitq/1"
EXIT = {"ok": 0, "wall": 0, "empty": 0, "error": 2, "internal": 3}


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    command: str
    status: str
    payload: dict = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)
    text: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]

    def to_json(self) -> dict:
        status = "error" if self.status == "internal" else self.status
        return {"schema": SCHEMA, "command": self.command, "status": status,
                "payload": self.payload, "diagnostics": list(self.diagnostics)}

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(self.to_json(), indent=1, sort_keys=True)
        lines = list(self.text)
        lines += [f"note: {d}" for d in self.diagnostics]
        if self.status in ("error", "internal"):
            lines = [f"error: {d}" for d in self.diagnostics] or ["error"]
        return "\n".join(lines)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)

    def exit(self, status=0, message=None):
        if status:
            raise UsageError((message or "").strip())
        raise SystemExit(status)


def _add_json(p):
    p.add_argument("--json", action="store_true", dest="json_sub", help="print a gitq/1 JSON document")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="gitq", description="GIT quotients of weighted points in the plane")
    ap.add_argument("--json", action="store_true", help="print a gitq/1 JSON document")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("stability", help="stability of an explicit configuration")
    p.add_argument("--m", required=True)
    p.add_argument("--points", required=True, help="file with one point per line: three rationals a/b")
    _add_json(p)

    p = sub.add_parser("generic", help="stability of configurations in general position")
    p.add_argument("--m", required=True)
    _add_json(p)

    p = sub.add_parser("chambers", help="enumerate chambers for n = 5 or 6")
    p.add_argument("--n", type=int, required=True, choices=(5, 6))
    p.add_argument("--bound", type=int, default=40)
    p.add_argument("--atlas", help="write the chamber atlas JSON here")
    _add_json(p)

    p = sub.add_parser("classify", help="quotient type and singular strata for six points")
    p.add_argument("--m", required=True)
    _add_json(p)

    p = sub.add_parser("wallcross", help="elementary transformation onto a wall")
    p.add_argument("--m", required=True, help="the polarization on the wall")
    p.add_argument("--index", type=int, required=True, help="1-based coordinate that moves")
    p.add_argument("--dir", type=int, required=True, choices=(1, -1),
                   help="m = m_hat + dir * e_index")
    _add_json(p)

    p = sub.add_parser("toric", help="toric local model of a stratum")
    p.add_argument("--stratum", required=True, choices=("pair", "matching", "triple"))
    p.add_argument("--inverted", default="", help="1-based coordinates to invert, e.g. 1,4")
    p.add_argument("--bound", type=int, default=6)
    _add_json(p)

    p = sub.add_parser("hilbert", help="tableau counts against the Hilbert series")
    p.add_argument("--kmax", type=int, default=10)
    _add_json(p)

    p = sub.add_parser("relations", help="check the bracket relations on random configurations")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    _add_json(p)
    return ap


# ---------------------------------------------------------------------------
# subcommands


def _stability(a) -> CommandResult:
    m = parse_weights(a.m)
    try:
        text = Path(a.points).read_text()
    except OSError as e:
        raise InputError(f"cannot read {a.points}: {e.strerror}") from None
    v = classify_configuration(parse_points(text), m)
    st = "wall" if v.status is Status.STRICTLY_SEMISTABLE else "ok"
    return CommandResult("stability", st, v.to_json(), text=[f"m={m}: {v.status.value}"])


def _generic_status(r: GenericReport) -> str:
    if r.empty:
        return "empty"
    return "ok" if r.verdict.stable else "wall"


def _generic(a) -> CommandResult:
    m = parse_weights(a.m)
    r = generic_stability(m)
    text = [f"m={m}: {r.verdict.status.value}"]
    if r.dimension is not None:
        text.append(f"quotient dimension {r.dimension}")
    return CommandResult("generic", _generic_status(r), r.to_json(), r.notes, text)


def _chambers(a) -> CommandResult:
    atlas = enumerate_chambers(a.n, a.bound)
    chambers = []
    for c in atlas:
        d = c.to_json()
        d["u_sets"] = c.describe()
        chambers.append(d)
    payload = {"n": a.n, "bound": a.bound, "count": len(atlas), "stabilized": atlas.stabilized,
               "chambers": chambers}
    diags = []
    if not atlas.stabilized:
        diags.append("new chambers appeared within the last 9 values of the bound")
    if a.atlas:
        try:
            Path(a.atlas).write_text(atlas.dumps() + "\n")
        except OSError as e:
            raise InputError(f"cannot write {a.atlas}: {e.strerror}") from None
    text = [f"{len(atlas)} chambers for n={a.n} (bound {a.bound}, stabilized={atlas.stabilized})"]
    for c in atlas:
        lab = f" [{c.to_json()['label']}]" if a.n == 5 else ""
        text.append(f"  {c.sample}{lab}: " + " ".join(c.describe()))
    return CommandResult("chambers", "ok", payload, diags, text)


def _classify(a) -> CommandResult:
    m = parse_weights(a.m)
    if m.n == 5:
        # five points: surface label, or the chamber/wall data
        lab = n5_label_of(m)
        s = stable_sets_of(m)
        payload = {"m": list(m.weights), "label": lab,
                   "on_wall": isinstance(s, WallReport), "sets": s.to_json()}
        if lab is None:
            r = generic_stability(m)
            return CommandResult("classify", _generic_status(r), r.to_json(), r.notes,
                                 [f"m={m}: {r.verdict.status.value}"])
        st = "wall" if isinstance(s, WallReport) else "ok"
        return CommandResult("classify", st, payload, text=[f"m={m}: {lab}"])
    if m.n != 6:
        raise InputError("classify supports five or six weights")
    q = classify_quotient_n6(m)
    if isinstance(q, GenericReport):
        return CommandResult("classify", _generic_status(q), q.to_json(), q.notes,
                             [f"m={m}: {q.verdict.status.value}"])
    st = "ok" if q.kind in (Kind.GEOMETRIC, Kind.GEOMETRIC_DIVISIBLE) else "wall"
    text = [f"m={m}: {q.kind.value}"]
    if q.kind is Kind.CATEGORICAL:
        text.append(f"{len(q.curves)} curves, {len(q.triple_points)} triple points, "
                    f"{len(q.smooth_points)} smooth points")
        text += [f"  {k}: {v}" for k, v in q.local_models.items()]
    if q.reduced is not None:
        text.append(f"reduced polarization {q.reduced}")
    return CommandResult("classify", st, q.to_json(), text=text)


def _wallcross(a) -> CommandResult:
    m = parse_weights(a.m)
    if not 1 <= a.index <= m.n:
        raise InputError(f"index {a.index} out of range 1..{m.n}")
    m_hat = m.bump(a.index - 1, -a.dir)
    r = wall_crossing_report(m_hat, m)
    text = [f"{m_hat} -> {m}"]
    text += [f"  {f.stratum}: dim {f.dimension}, {f.fiber_type}" for f in r.fibers]
    diags = [] if r.fibers else ["no strictly semistable strata"]
    return CommandResult("wallcross", "ok", r.to_json(), diags, text)


def _toric(a) -> CommandResult:
    model = local_model(a.stratum, a.bound, parse_inverted(a.inverted))
    text = ["generators: " + (" ".join(model.monomial(g) for g in model.generators) or "none")]
    text += model.relation_strings() or ["no relations"]
    text.append(f"smooth: {model.smooth}")
    return CommandResult("toric", "ok", model.to_json(), list(model.warnings), text)


def _hilbert(a) -> CommandResult:
    if a.kmax < 0:
        raise InputError("kmax must be nonnegative")
    rows = hilbert_table(a.kmax)
    match = all(r[1] == r[2] == r[3] for r in rows)
    payload = {"rows": [list(r) for r in rows], "match": match}
    text = ["k tableau closed series"] + [" ".join(map(str, r)) for r in rows]
    text.append(f"match: {match}")
    if not match:
        raise InvariantError("tableau counts disagree with the Hilbert series")
    return CommandResult("hilbert", "ok", payload, text=text)


def _relations(a) -> CommandResult:
    if a.trials < 0:
        raise InputError("trials must be nonnegative")
    rep = relation_trials(a.trials, a.seed)
    if not rep["all_zero"]:
        raise InvariantError(f"{len(rep['nonzero'])} configurations with nonzero residuals")
    return CommandResult("relations", "ok", rep,
                         text=[f"{a.trials} configurations (seed {a.seed}): all residuals zero"])


HANDLERS = {"stability": _stability, "generic": _generic, "chambers": _chambers,
            "classify": _classify, "wallcross": _wallcross, "toric": _toric,
            "hilbert": _hilbert, "relations": _relations}


def run(argv) -> tuple[CommandResult, bool]:
    argv = list(argv)
    as_json = "--json" in argv
    try:
        a = build_parser().parse_args(argv)
        as_json = a.json or getattr(a, "json_sub", False)
        if not a.command:
            raise UsageError("a subcommand is required")
        return HANDLERS[a.command](a), as_json
    except (UsageError, InputError) as e:
        cmd = next((x for x in argv if x in HANDLERS), "")
        return CommandResult(cmd, "error", diagnostics=[str(e)]), as_json
    except InvariantError as e:
        cmd = next((x for x in argv if x in HANDLERS), "")
        return CommandResult(cmd, "internal", diagnostics=[f"invariant failure: {e}"]), as_json
    except Exception as e:  # never let a traceback escape
        cmd = next((x for x in argv if x in HANDLERS), "")
        return CommandResult(cmd, "internal",
                             diagnostics=[f"internal error: {type(e).__name__}: {e}"]), as_json


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        result, as_json = run(argv)
    except SystemExit as e:  # --help
        return int(e.code or 0)
    out = result.render(as_json)
    stream = sys.stdout if result.exit_code == 0 or as_json else sys.stderr
    print(out, file=stream)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
