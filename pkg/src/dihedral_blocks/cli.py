"""Command line harness: group facts, Scott modules, Brauer audits, transport, decomposition matrices, corpus runs."""

from __future__ import annotations

import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import click
import jsonschema

from . import __version__
from .groups import (CapExceeded, DefectTooSmall, DegenerateSpec, FiniteGroup, GroupError, NotDihedralSylow,
                     SpecParseError, UnsupportedParameter, construct, involution_fusion, parse_spec,
                     sylow2_dihedral)
from .repmod import algebra

EXTENDED_DIM = 2000
EXTENDED_ORDER = 5000

DEFAULT_CORPUS = """\
# id spec expected_case gendec_case n notes
d8 d:8 CASE1_NILPOTENT a 3
d16 d:16 CASE1_NILPOTENT a 4
d32 d:32 CASE1_NILPOTENT a 5
a7 a:7 CASE3_PSL b 3
psl2-7 psl2:7 CASE3_PSL d 3
psl2-9 psl2:9 CASE3_PSL c 3
psl2-13 psl2:13 CASE3_PSL none 2 klein-four
psl2-17 psl2:17 CASE3_PSL c 4
pgl2-3 pgl2:3 CASE2_PGL f 3
pgl2-5 pgl2:5 CASE2_PGL e 3
pgl2-7 pgl2:7 CASE2_PGL f 4
pgl2-9 pgl2:9 CASE2_PGL e 4
s4xs4 prod(pgl2:3,pgl2:3) CASE2_PGL none 3 transport=morita
s4xs5 prod(pgl2:3,pgl2:5) CASE2_PGL none 3 transport=stable-only
l27xl29 prod(psl2:7,psl2:9) CASE3_PSL none 3 transport=stable-only
"""

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["tool", "version", "command", "checks", "overall"],
    "additionalProperties": False,
    "properties": {
        "tool": {"const": "dihedral_blocks"},
        "version": {"type": "string"},
        "command": {"type": "string"},
        "overall": {"enum": ["pass", "fail", "skip"]},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "status", "details"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "status": {"enum": ["pass", "fail", "skip"]},
                    "details": {},
                    "timing": {"type": ["number", "null"]},
                },
            },
        },
    },
}


class UsageProblem(Exception):
    """Bad input: exit code 2."""


@dataclass
class Check:
    name: str
    status: str
    details: object = None
    timing: float | None = None


@dataclass
class Report:
    command: str
    checks: list[Check] = field(default_factory=list)

    @property
    def overall(self) -> str:
        st = [c.status for c in self.checks]
        if "fail" in st:
            return "fail"
        if st and all(s == "skip" for s in st):
            return "skip"
        return "pass"

    def add(self, name: str, ok: bool | None, details=None, timing=None) -> Check:
        c = Check(name, "skip" if ok is None else ("pass" if ok else "fail"), details, timing)
        self.checks.append(c)
        return c

    def to_json(self) -> dict:
        return {
            "tool": "dihedral_blocks",
            "version": __version__,
            "command": self.command,
            "checks": [{"name": c.name, "status": c.status, "details": c.details, "timing": c.timing}
                       for c in self.checks],
            "overall": self.overall,
        }


def dumps(report: Report) -> str:
    doc = report.to_json()
    jsonschema.validate(doc, REPORT_SCHEMA)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------- corpus

@dataclass
class CorpusEntry:
    id: str
    spec: str
    expected_case: str
    gendec_case: str | None
    n: int
    notes: dict[str, str] = field(default_factory=dict)


def parse_corpus(text: str) -> list[CorpusEntry]:
    out = []
    for num, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) < 5:
            raise UsageProblem(f"corpus line {num}: expected 5 fields, got {len(parts)}")
        ident, spec, case, gd, n = parts[:5]
        try:
            parse_spec(spec)
            n = int(n)
        except (SpecParseError, ValueError) as exc:
            raise UsageProblem(f"corpus line {num}: {exc}") from exc
        notes = {}
        for tok in parts[5:]:
            k, _, v = tok.partition("=")
            notes[k] = v
        out.append(CorpusEntry(ident, spec, case, None if gd == "none" else gd, n, notes))
    out.sort(key=lambda e: e.id)
    return out


# ---------------------------------------------------------------- individual checks

def _spec_q(G: FiniteGroup) -> int | None:
    spec = G.spec
    if spec is not None and spec.family in ("psl2", "pgl2"):
        return spec.params[0]
    return None


def _timed(fn, *args, **kwargs):
    t = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, round(time.perf_counter() - t, 3)


class Runner:
    def __init__(self, extended: bool = False, timings: bool = False):
        self.extended = extended
        self.timings = timings
        self.rng = algebra.make_rng()

    def _t(self, x: float) -> float | None:
        return x if self.timings else None

    def too_big(self, G: FiniteGroup, dim: int = 0) -> bool:
        return not self.extended and (G.order > EXTENDED_ORDER or dim > EXTENDED_DIM)

    # -- group info
    def group_info(self, rep: Report, G: FiniteGroup, expected: str | None = None) -> None:
        info: dict = {"order": G.order, "classes": len(G.classes)}
        if G.factors:
            info["factors"] = [H.name for H in G.factors]
            rep.add("group", True, info)
            return
        try:
            frame = sylow2_dihedral(G, allow_klein=True)
        except NotDihedralSylow as exc:
            info["sylow"] = str(exc)
            rep.add("group", True, info)
            return
        fc = involution_fusion(G, frame)
        info.update(sylow_order=2**frame.n, s=str(frame.s), t=str(frame.t), z=str(frame.z),
                    fusion=fc.label.value, involution_classes=fc.involution_class_count,
                    predicted_l=fc.predicted_l)
        rep.add("group", True, info)
        if expected is not None:
            rep.add("fusion", fc.label.value == expected, {"got": fc.label.value, "expected": expected})

    # -- Scott module with Loewy and socle series
    def scott(self, rep: Report, G: FiniteGroup, at: str) -> None:
        from .repmod.series import dual_series, loewy_series, socle_series
        from .repmod.summands import is_projective, scott
        from .workflows import resolve_subgroup
        H = resolve_subgroup(G, at)
        if self.too_big(G, G.order // H.order):
            rep.add(f"scott:{at}", None, "requires --extended")
            return
        (Sc, t) = _timed(scott, G, H, rng=self.rng)
        L = loewy_series(Sc, self.rng)
        S = socle_series(Sc, self.rng)
        details = {"dim": Sc.dim, "perm_dim": Sc.parent.dim, "loewy": L.as_lists(), "loewy_dims": L.dims(),
                   "socle": S.as_lists(), "projective": is_projective(Sc)}
        rep.add(f"scott:{at}", True, details, self._t(t))
        rep.add("socle_equals_dual_loewy", S.layers == dual_series(L).layers,
                {"socle_dims": S.dims()})
        q = _spec_q(G)
        if at == "borel" and q is not None:
            ok = _expected_scott_shape(G.spec.family, q, L)
            rep.add("scott_shape", ok, {"family": G.spec.family, "q": q, "loewy_dims": L.dims()})

    # -- Brauer audit
    def brauer(self, rep: Report, G: FiniteGroup) -> None:
        from .workflows import FusionMismatch, audit_group
        if self.too_big(G):
            rep.add("brauer", None, "requires --extended")
            return
        try:
            (res, t) = _timed(audit_group, G, self.rng)
        except FusionMismatch as exc:
            rep.add("brauer", None, {"reason": "FusionMismatch", "message": str(exc)})
            return
        except (DefectTooSmall, NotDihedralSylow) as exc:
            rep.add("brauer", None, {"reason": type(exc).__name__, "message": str(exc)})
            return
        Sc, audit = res
        rep.add("brauer", audit.passed, {"scott_dim": Sc.dim, "perm_dim": Sc.parent.dim, "audit": audit.to_json()},
                self._t(t))

    # -- transport across the diagonal Scott bimodule
    def transport(self, rep: Report, G: FiniteGroup, expected: str | None = None) -> None:
        from .workflows import FusionMismatch, transport_all
        if self.too_big(G):
            rep.add("transport", None, "requires --extended")
            return
        try:
            (summ, t) = _timed(transport_all, G, self.rng)
        except FusionMismatch as exc:
            rep.add("transport", None, {"reason": "FusionMismatch", "message": str(exc)})
            return
        details = {"verdict": summ.verdict, "images": {name: r.to_json() for name, r in summ.results}}
        rep.add("transport", summ.contract_ok, details, self._t(t))
        if expected:
            rep.add("transport_verdict", summ.verdict == expected, {"got": summ.verdict, "expected": expected})

    # -- decomposition matrices
    def gendec_verify(self, rep: Report, G: FiniteGroup, case: str, n: int, q: int | None) -> None:
        from .chars import DELTA_CONSTANTS, delta_signs, gendec_verify
        if self.too_big(G):
            rep.add("gendec", None, "requires --extended")
            return
        (vr, t) = _timed(gendec_verify, G, case, n, q)
        rep.add("gendec", vr.passed, vr.to_json(), self._t(t))
        signs = delta_signs(G, case, n, q)
        if signs is None:
            rep.add("delta_signs", None, "sign-free case")
        else:
            want = DELTA_CONSTANTS[case]
            rep.add("delta_signs", signs.as_tuple() == want, {"got": list(signs.as_tuple()), "expected": list(want)})

    # -- block combinatorics
    def blocks(self, rep: Report, G: FiniteGroup, n: int) -> None:
        from .chars import dixon_table, principal_block
        if self.too_big(G):
            rep.add("blocks", None, "requires --extended")
            return
        B = principal_block(dixon_table(G))
        ok = B.k == 2 ** (n - 2) + 3 and len(B.height_zero) == 4
        rep.add("blocks", ok, {"k": B.k, "expected_k": 2 ** (n - 2) + 3, "height_zero": len(B.height_zero),
                               "degrees": [B.table.degrees[i] for i in B.rows]})

    def simples(self, rep: Report, G: FiniteGroup) -> None:
        from .workflows import b0_simples
        if self.too_big(G):
            rep.add("l_B0", None, "requires --extended")
            return
        frame = sylow2_dihedral(G, allow_klein=True)
        want = involution_fusion(G, frame).predicted_l
        got = b0_simples(G, self.rng)
        rep.add("l_B0", len(got) == want, {"l": len(got), "predicted": want, "dims": [S.dim for S in got]})

    # -- one corpus entry
    def entry(self, rep: Report, e: CorpusEntry, tags: set[str] | None) -> None:
        def want(tag: str) -> bool:
            return tags is None or tag in tags or e.id in tags

        G = construct(e.spec)
        prefix = len(rep.checks)
        if want("fusion") and not G.factors:
            fc = involution_fusion(G, sylow2_dihedral(G, allow_klein=True))
            rep.add("fusion", fc.label.value == e.expected_case,
                    {"got": fc.label.value, "expected": e.expected_case})
        if G.factors:
            if want("brauer"):
                self.brauer(rep, G)
            if want("transport"):
                self.transport(rep, G, e.notes.get("transport"))
        else:
            if want("blocks"):
                self.blocks(rep, G, e.n)
            if want("simples"):
                self.simples(rep, G)
            if want("gendec") and e.gendec_case:
                self.gendec_verify(rep, G, e.gendec_case, e.n, _spec_q(G))
            if want("brauer") and e.n >= 3:
                self.brauer(rep, G)
            if want("scott") and _spec_q(G) is not None:
                self.scott(rep, G, "borel")
        for c in rep.checks[prefix:]:
            c.name = f"{e.id}:{c.name}"


def _expected_scott_shape(family: str, q: int, L) -> bool:
    dims = L.dims()
    if family == "psl2":
        s = (q - 1) // 2
        mid = L.as_lists()[1] if len(dims) == 3 else []
        # the middle pair is swapped by duality when q = 3 mod 4 and self-dual when q = 1 mod 4
        return dims == [[1], [s, s], [1]] and len(set(mid)) == 2 and \
            {L.library.dual_label(x) for x in mid} == set(mid)
    return dims == [[1], [1, q - 1], [1, q - 1], [1]]


# ---------------------------------------------------------------- click plumbing

def _emit(ctx: click.Context, rep: Report) -> None:
    for c in rep.checks:
        det = c.details if isinstance(c.details, str) else json.dumps(c.details, sort_keys=True)
        if len(det) > 160:
            det = det[:157] + "..."
        click.echo(f"{c.status.upper():4}  {c.name}  {det}")
    click.echo(f"overall: {rep.overall}")
    path = ctx.obj.get("json")
    if path:
        Path(path).write_text(dumps(rep))
    ctx.exit(1 if rep.overall == "fail" else 0)


def _group(spec: str) -> FiniteGroup:
    try:
        return construct(spec)
    except (SpecParseError, UnsupportedParameter, DegenerateSpec, DefectTooSmall, CapExceeded) as exc:
        raise UsageProblem(f"{type(exc).__name__}: {exc}") from exc


@click.group()
@click.option("--json", "json_path", type=click.Path(dir_okay=False), help="Write the JSON report here.")
@click.option("--corpus", "corpus_path", type=click.Path(exists=True, dir_okay=False), help="Corpus file.")
@click.option("--extended", is_flag=True, help="Allow groups above order 5000 and modules above dim 2000.")
@click.option("--timings", is_flag=True, help="Record wall-clock seconds (reports stop being byte-stable).")
@click.version_option(__version__)
@click.pass_context
def main(ctx: click.Context, json_path, corpus_path, extended, timings):
    """Verification harness for principal 2-blocks with dihedral defect groups."""
    ctx.ensure_object(dict)
    ctx.obj.update(json=json_path, corpus=corpus_path, runner=Runner(extended, timings))


@main.group()
def group():
    """Group facts."""


@group.command("info")
@click.argument("spec")
@click.pass_context
def group_info(ctx, spec):
    rep = Report(f"group info {spec}")
    ctx.obj["runner"].group_info(rep, _group(spec))
    _emit(ctx, rep)


@main.command("scott")
@click.argument("spec")
@click.option("--at", "at", default="borel", show_default=True,
              help="borel, sylow, or generators in cycle notation separated by ';'.")
@click.pass_context
def scott_cmd(ctx, spec, at):
    """Scott module, Loewy and socle series, projectivity."""
    rep = Report(f"scott {spec} --at {at}")
    try:
        ctx.obj["runner"].scott(rep, _group(spec), at)
    except GroupError as exc:
        raise UsageProblem(f"{type(exc).__name__}: {exc}") from exc
    _emit(ctx, rep)


@main.command("brauer")
@click.argument("spec")
@click.pass_context
def brauer_cmd(ctx, spec):
    """Brauer indecomposability audit of Sc(G, P) or Sc(G x G', diagonal P)."""
    rep = Report(f"brauer {spec}")
    ctx.obj["runner"].brauer(rep, _group(spec))
    _emit(ctx, rep)


@main.command("transport")
@click.argument("spec")
@click.pass_context
def transport_cmd(ctx, spec):
    """Send the simples of B0 of the left factor across the diagonal Scott bimodule."""
    G = _group(spec)
    if not G.factors:
        raise UsageProblem("transport needs a product prod(a,b)")
    rep = Report(f"transport {spec}")
    ctx.obj["runner"].transport(rep, G)
    _emit(ctx, rep)


@main.group()
def gendec():
    """Generalised decomposition matrices."""


@gendec.command("build")
@click.option("--case", "case", required=True, type=click.Choice(list("abcdef")))
@click.option("--n", "n", type=int, default=3, show_default=True)
@click.option("--q", "q", type=int, default=None)
@click.pass_context
def gendec_build_cmd(ctx, case, n, q):
    from .chars import CaseParameterMismatch, gendec_build
    try:
        M = gendec_build(case, n, q)
    except CaseParameterMismatch as exc:
        raise UsageProblem(f"CaseParameterMismatch: {exc}") from exc
    rep = Report(f"gendec build --case {case} --n {n}" + (f" --q {q}" if q else ""))
    rep.add("matrix", M.cross_section_orthogonal(), {"text": M.to_text(), "matrix": M.to_json()})
    click.echo(M.to_text(), nl=False)
    _emit(ctx, rep)


@gendec.command("verify")
@click.option("--case", "case", required=True, type=click.Choice(list("abcdef")))
@click.option("--group", "spec", required=True)
@click.option("--n", "n", type=int, default=None, help="Defect exponent (default: read off the group).")
@click.option("--q", "q", type=int, default=None, help="Field size (default: read off the spec).")
@click.pass_context
def gendec_verify_cmd(ctx, case, spec, n, q):
    from .chars import CaseParameterMismatch, WrongFusionCase
    G = _group(spec)
    if n is None:
        n = G.sylow2_order().bit_length() - 1
    if q is None:
        q = _spec_q(G)
    rep = Report(f"gendec verify --case {case} --group {spec} --n {n}" + (f" --q {q}" if q else ""))
    try:
        ctx.obj["runner"].gendec_verify(rep, G, case, n, q)
    except (CaseParameterMismatch, WrongFusionCase) as exc:
        rep.add("gendec", False, {"error": type(exc).__name__, "message": str(exc)})
    _emit(ctx, rep)


@main.group()
def corpus():
    """Named corpus of groups."""


@corpus.command("run")
@click.option("--filter", "filt", default=None, help="Comma-separated check tags or entry ids.")
@click.pass_context
def corpus_run(ctx, filt):
    path = ctx.obj.get("corpus")
    entries = parse_corpus(Path(path).read_text() if path else DEFAULT_CORPUS)
    tags = None if filt is None else {t.strip() for t in filt.split(",") if t.strip()}
    rep = Report("corpus run" + (f" --filter {filt}" if filt else ""))
    runner: Runner = ctx.obj["runner"]
    for e in entries:
        try:
            runner.entry(rep, e, tags)
        except Exception as exc:  # a corpus entry must never crash the run
            rep.add(f"{e.id}:error", False, {"error": type(exc).__name__, "message": str(exc)})
    _emit(ctx, rep)


@main.command("schema")
def schema_cmd():
    """Print the JSON schema of reports."""
    click.echo(json.dumps(REPORT_SCHEMA, indent=2, sort_keys=True))


def run(argv: list[str] | None = None) -> int:
    """Entry point with the documented exit codes (0 pass/skip, 1 failure, 2 usage or parse error)."""
    try:
        rv = main.main(args=argv, standalone_mode=False, obj={})
    except UsageProblem as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 2
    except click.exceptions.Abort:
        return 2
    return rv if isinstance(rv, int) else 0


def entry() -> None:
    sys.exit(run())


if __name__ == "__main__":
    entry()
