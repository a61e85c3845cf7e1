"""Generalised 2-decomposition matrices of principal blocks with dihedral defect groups.

The six shapes (a)-(f) are built exactly as tabulated; the verifier recomputes
the columns at non-trivial 2-sections from a Dixon table.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field, replace
from math import gcd

from ..groups import (FiniteGroup, FusionLabel, NotDihedralSylow, SylowDihedralFrame, involution_fusion,
                      sylow2_dihedral, two_part)
from .cyclotomic import Cyclotomic, cyc, parse
from .table import CharacterTable, PrincipalBlock, dixon_table, principal_block

CASES = ("a", "b", "c", "d", "e", "f")
FUSION_OF_CASE = {"a": FusionLabel.CASE1_NILPOTENT, "b": FusionLabel.CASE3_PSL, "c": FusionLabel.CASE3_PSL,
                  "d": FusionLabel.CASE3_PSL, "e": FusionLabel.CASE2_PGL, "f": FusionLabel.CASE2_PGL}
DELTA_CONSTANTS = {"c": (1, -1, -1), "d": (-1, 1, 1), "e": (1, -1, -1), "f": (-1, 1, -1)}


class CaseParameterMismatch(ValueError):
    pass


class WrongFusionCase(ValueError):
    pass


class NoMatchingRelabelling(Exception):
    pass


class SignAmbiguity(Exception):
    pass


@dataclass(frozen=True)
class Column:
    label: str
    section: str  # "1", "z", "s^a", "t" or "st"
    power: int = 0  # a for s^a columns, 2^(n-2) for z
    source: str = "reference"


@dataclass(frozen=True)
class GenDecMatrix:
    case: str
    n: int
    q: int | None
    N: int
    row_labels: tuple[str, ...]
    heights: tuple[int, ...]
    columns: tuple[Column, ...]
    entries: tuple[tuple[Cyclotomic, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.columns)

    def column(self, k: int) -> list[Cyclotomic]:
        return [row[k] for row in self.entries]

    def sections(self) -> list[str]:
        out = []
        for c in self.columns:
            key = c.section if c.section != "s^a" else f"s^{c.power}"
            if key not in out:
                out.append(key)
        return out

    def section_of(self, k: int) -> str:
        c = self.columns[k]
        return c.section if c.section != "s^a" else f"s^{c.power}"

    def cross_section_orthogonal(self) -> bool:
        """sum_chi d^u conj(d^u') = 0 for all columns of distinct sections."""
        m = len(self.columns)
        for i in range(m):
            for k in range(i + 1, m):
                if self.section_of(i) == self.section_of(k):
                    continue
                tot = Cyclotomic.integer(self.N, 0)
                for row in self.entries:
                    tot = tot + row[i] * row[k].conj()
                if tot != 0:
                    return False
        return True

    def galois(self, c: int) -> "GenDecMatrix":
        ents = tuple(tuple(v.galois(c) for v in row) for row in self.entries)
        return replace(self, entries=ents)

    # ---- serialisation
    def to_text(self) -> str:
        q = "-" if self.q is None else str(self.q)
        lines = [f"{self.case} {self.n} {q} {self.N}"]
        lines += [",".join(str(v) for v in row) for row in self.entries]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "GenDecMatrix":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        try:
            case, n, q, N = lines[0].split()
            n, N = int(n), int(N)
            q = None if q == "-" else int(q)
        except ValueError as exc:
            raise CaseParameterMismatch(f"bad header {lines[0]!r}") from exc
        shell = gendec_build(case, n, q)
        if N != shell.N:
            raise CaseParameterMismatch(f"header N = {N}, expected {shell.N}")
        ents = tuple(tuple(parse(x, N) for x in ln.split(",")) for ln in lines[1:])
        if len(ents) != shell.shape[0] or any(len(r) != shell.shape[1] for r in ents):
            raise CaseParameterMismatch("matrix shape does not fit the case")
        return replace(shell, entries=ents)

    def to_json(self) -> dict:
        return {
            "case": self.case, "n": self.n, "q": self.q, "N": self.N,
            "rows": [{"label": l, "height": h} for l, h in zip(self.row_labels, self.heights)],
            "columns": [{"label": c.label, "section": self.section_of(k), "source": c.source}
                        for k, c in enumerate(self.columns)],
            "entries": [[str(v) for v in row] for row in self.entries],
        }

    def __str__(self) -> str:
        return json.dumps(self.to_json())


# ---------------------------------------------------------------- building

def _check_params(case: str, n: int, q: int | None) -> None:
    if case not in CASES:
        raise CaseParameterMismatch(f"unknown case {case!r}")
    if n < 3:
        raise CaseParameterMismatch(f"defect exponent n = {n} < 3")
    if case == "b" and n != 3:
        raise CaseParameterMismatch("case b requires n = 3")
    if case in "cdef":
        if q is None or q < 3 or q % 2 == 0:
            raise CaseParameterMismatch(f"case {case} needs an odd q, got {q}")
        part = {"c": two_part(q - 1), "d": two_part(q + 1),
                "e": 2 * two_part(q - 1), "f": 2 * two_part(q + 1)}[case]
        if part != 2**n:
            raise CaseParameterMismatch(f"case {case}, q = {q}: 2-part {part} != 2^{n}")


def reference_degrees(case: str, n: int, q: int | None) -> list[int]:
    """Row degrees for the model group of the case (D_2^n, A_7, PSL_2(q) or PGL_2(q))."""
    m = 2 ** (n - 2) - 1
    if case == "a":
        return [1, 1, 1, 1] + [2] * m
    if case == "b":
        return [1, 15, 21, 35, 14]
    if case == "c":
        return [1, (q + 1) // 2, (q + 1) // 2, q] + [q + 1] * m
    if case == "d":
        return [1, (q - 1) // 2, (q - 1) // 2, q] + [q - 1] * m
    if case == "e":
        return [1, q, q, 1] + [q + 1] * m
    return [1, q, q, 1] + [q - 1] * m


def reference_order(case: str, n: int, q: int | None) -> int:
    if case == "a":
        return 2**n
    if case == "b":
        return 2520
    psl = q * (q * q - 1) // 2
    return psl if case in "cd" else 2 * psl


def gendec_build(case: str, n: int, q: int | None = None) -> GenDecMatrix:
    """The tabulated matrix for the given case, with zeta a primitive 2^(n-1)-th root of unity."""
    _check_params(case, n, q)
    if case in "ab":
        q = None
    N = 2 ** (n - 1)
    half = 2 ** (n - 2)
    js = range(1, half)
    I = lambda k: Cyclotomic.integer(N, k)  # noqa: E731
    zs = lambda j, a: cyc(N, j * a) + cyc(N, -j * a)  # noqa: E731
    sgn = lambda e: 1 if e % 2 == 0 else -1  # noqa: E731

    # u = 1 block and labels
    if case == "a":
        dec = [[1]] * 4 + [[2]] * len(js)
        phis = ["phi1"]
        labels = ["1", "chi1", "chi2", "chi3"] + [f"chi^({j})" for j in js]
    elif case == "b":
        dec = [[1, 0, 0], [1, 1, 0], [1, 0, 1], [1, 1, 1], [0, 1, 0]]
        phis = ["phi1", "phi14", "phi20"]
        labels = ["1", "chi7", "chi8", "chi9", "chi5"]
    elif case in "cd":
        d = (q + 1) // 2 if case == "c" else (q - 1) // 2
        h = q + 1 if case == "c" else q - 1
        last = [2, 1, 1] if case == "c" else [0, 1, 1]
        top = [[1, 0, 0], [1, 1, 0], [1, 0, 1]] if case == "c" else [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        dec = top + [[1, 1, 1]] + [last] * len(js)
        phis = ["phi1", "phi2", "phi3"]
        labels = ["1", f"chi{d}^(1)", f"chi{d}^(2)", "St"] + [f"chi{h}^({j})" for j in js]
    else:
        h = q + 1 if case == "e" else q - 1
        last = [2, 1] if case == "e" else [0, 1]
        dec = [[1, 0], [1, 1], [1, 1], [1, 0]] + [last] * len(js)
        phis = ["phi1", "phi2"]
        labels = ["1", f"chi{q}^(1)", f"chi{q}^(2)", "chi3"] + [f"chi{h}^({j})" for j in js]

    cols = [Column(p, "1") for p in phis]
    rows: list[list[Cyclotomic]] = [[I(x) for x in r] for r in dec]

    def add_col(col: Column, vals: list) -> None:
        cols.append(col)
        for r, v in zip(rows, vals):
            r.append(v if isinstance(v, Cyclotomic) else I(v))

    zcol = Column("z", "z", half)
    if case == "a":
        add_col(zcol, [1, 1, 1, 1] + [2 * sgn(j) for j in js])
        for a in js:
            add_col(Column(f"s^{a}", "s^a", a), [1, 1, sgn(a), sgn(a)] + [zs(j, a) for j in js])
        add_col(Column("t", "t"), [1, -1, 1, -1] + [0] * len(js))
        add_col(Column("st", "st"), [1, -1, -1, 1] + [0] * len(js))
    elif case == "b":
        add_col(zcol, [1, -1, 1, -1, 2])
        add_col(Column("s^1", "s^a", 1), [1, -1, -1, 1, 0])
    elif case == "c":
        add_col(zcol, [1, 1, 1, 1] + [2 * sgn(j) for j in js])
        for a in js:
            add_col(Column(f"s^{a}", "s^a", a), [1, sgn(a), sgn(a), 1] + [zs(j, a) for j in js])
    elif case == "d":
        add_col(zcol, [1, -1, -1, -1] + [2 * sgn(j + 1) for j in js])
        for a in js:
            add_col(Column(f"s^{a}", "s^a", a), [1, sgn(a + 1), sgn(a + 1), -1] + [-zs(j, a) for j in js])
    elif case == "e":
        add_col(Column("t", "t"), [1, -1, 1, -1] + [0] * len(js))
        add_col(zcol, [1, 1, 1, 1] + [2 * sgn(j) for j in js])
        for a in js:
            add_col(Column(f"s^{a}", "s^a", a), [1, 1, sgn(a), sgn(a)] + [zs(j, a) for j in js])
    else:
        add_col(Column("t", "t"), [1, 1, -1, -1] + [0] * len(js))
        add_col(zcol, [1, -1, -1, 1] + [-2 * sgn(j) for j in js])
        for a in js:
            add_col(Column(f"s^{a}", "s^a", a), [1, -1, sgn(a + 1), sgn(a)] + [-zs(j, a) for j in js])

    heights = tuple([0] * 4 + [1] * len(js))
    return GenDecMatrix(case, n, q, N, tuple(labels), heights, tuple(cols),
                        tuple(tuple(r) for r in rows))


# ---------------------------------------------------------------- verification

@dataclass
class VerificationReport:
    group: str
    case: str
    n: int
    q: int | None
    passed: bool = False
    checks: dict[str, bool] = field(default_factory=dict)
    relabelling: dict | None = None
    column_sources: dict[str, str] = field(default_factory=dict)
    messages: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"group": self.group, "case": self.case, "n": self.n, "q": self.q, "passed": self.passed,
                "checks": dict(sorted(self.checks.items())), "relabelling": self.relabelling,
                "column_sources": self.column_sources, "messages": list(self.messages)}


@dataclass
class _Context:
    G: FiniteGroup
    frame: SylowDihedralFrame
    table: CharacterTable
    block: PrincipalBlock


def _context(G: FiniteGroup, case: str, n: int, q: int | None) -> _Context:
    _check_params(case, n, q)
    try:
        frame = sylow2_dihedral(G)
    except NotDihedralSylow as exc:
        raise CaseParameterMismatch(str(exc)) from exc
    if frame.n != n:
        raise CaseParameterMismatch(f"|P| = 2^{frame.n}, case claims n = {n}")
    fusion = involution_fusion(G, frame)
    if fusion.label != FUSION_OF_CASE[case]:
        raise WrongFusionCase(f"{G.name} has fusion {fusion.label.value}, case {case} needs "
                              f"{FUSION_OF_CASE[case].value}")
    table = dixon_table(G)
    return _Context(G, frame, table, principal_block(table))


def _section_element(frame: SylowDihedralFrame, col: Column, swap: bool):
    if col.section == "z":
        return frame.z
    if col.section == "s^a":
        return frame.s ** col.power
    if col.section in ("t", "st"):
        first = (col.section == "t") != swap
        return frame.t if first else frame.st
    raise ValueError(col.section)


def _match_rows(keys_ref: list[tuple], keys_comp: list[tuple]) -> list[int] | None:
    """Deterministic bijection reference row -> computed row with equal keys, or None."""
    pool: dict[tuple, list[int]] = defaultdict(list)
    for i, k in enumerate(keys_comp):
        pool[k].append(i)
    out = []
    for k in keys_ref:
        if not pool.get(k):
            return None
        out.append(pool[k].pop(0))
    return out


def gendec_verify(G: FiniteGroup, case: str, n: int, q: int | None = None,
                  twist: int = 1) -> VerificationReport:
    """Compare the tabulated non-trivial section columns with chi(u) computed from a Dixon table.

    ``twist`` replaces zeta by zeta^twist in the tabulated matrix before matching.
    """
    ctx = _context(G, case, n, q)
    ref = gendec_build(case, n, q)
    if twist != 1:
        ref = ref.galois(twist)
    T, B, frame = ctx.table, ctx.block, ctx.frame
    rep = VerificationReport(G.name, case, n, ref.q)
    checks = rep.checks
    checks["orthogonality"] = T.rows_orthogonal() and T.columns_orthogonal()
    checks["k_B0"] = B.k == 2 ** (n - 2) + 3
    checks["height_zero_count"] = len(B.height_zero) == 4
    checks["reference_cross_section_orthogonality"] = ref.cross_section_orthogonal()

    nontriv = {G.class_of(x) for x in frame.P.elements if not x.is_identity()}
    ref_sections = [s for s in ref.sections() if s != "1"]
    checks["section_count"] = len(nontriv) == len(ref_sections)

    deg_known = G.order == reference_order(case, n, ref.q)
    ref_deg = reference_degrees(case, n, ref.q)
    sec_cols = [k for k, c in enumerate(ref.columns) if c.section != "1"]
    has_refl = any(ref.columns[k].section in ("t", "st") for k in sec_cols)
    degrees = [T.degrees[i] for i in B.rows]

    found = None
    for c in range(1, ref.N, 2):
        twisted = ref.galois(c)
        for swap in ((False, True) if has_refl else (False,)):
            elems = [_section_element(frame, ref.columns[k], swap) for k in sec_cols]
            classes = [G.class_of(x) for x in elems]
            if len(set(classes)) != len(classes):
                continue
            comp_keys = []
            for r, i in enumerate(B.rows):
                vals = tuple(T.chars[i][cl].embed(_lcm(T.N, ref.N)).key() for cl in classes)
                comp_keys.append((B.heights[r], degrees[r] if deg_known else 0, vals))
            ref_keys = []
            for r in range(len(ref.entries)):
                vals = tuple(twisted.entries[r][k].embed(_lcm(T.N, ref.N)).key() for k in sec_cols)
                ref_keys.append((ref.heights[r], ref_deg[r] if deg_known else 0, vals))
            m = _match_rows(ref_keys, comp_keys)
            if m is not None:
                found = (c, swap, m, classes)
                break
        if found:
            break

    checks["columns_match"] = found is not None
    if found is None:
        rep.messages.append(str(NoMatchingRelabelling(
            "no row bijection, Galois twist or reflection relabelling reproduces the section columns")))
        checks["sections_distinct"] = False
        checks["computed_cross_section_orthogonality"] = False
    else:
        c, swap, m, classes = found
        checks["sections_distinct"] = True
        rows = [B.rows[j] for j in m]
        rep.relabelling = {
            "galois": c,
            "reflections_swapped": swap,
            "rows": [{"label": ref.row_labels[r], "degree": T.degrees[i], "table_row": i}
                     for r, i in enumerate(rows)],
        }
        # the tabulated u = 1 block together with the recomputed section columns
        M = _lcm(T.N, ref.N)
        ents = []
        for r, i in enumerate(rows):
            row = [ref.entries[r][k].embed(M) for k, col in enumerate(ref.columns) if col.section == "1"]
            row += [T.chars[i][cl].embed(M) for cl in classes]
            ents.append(tuple(row))
        assembled = replace(ref, N=M, entries=tuple(ents))
        checks["computed_cross_section_orthogonality"] = assembled.cross_section_orthogonal()
    for k, col in enumerate(ref.columns):
        src = "verified" if col.section != "1" else "reference"
        if case == "a" and col.section == "1" and found is not None:
            src = "verified" if [T.degrees[i] for i in (B.rows[j] for j in found[2])] == \
                [int(v) for v in ref.column(k)] else "reference"
        rep.column_sources[col.label] = src
    rep.passed = all(checks.values())
    return rep


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# ---------------------------------------------------------------- signs

@dataclass(frozen=True)
class DeltaSigns:
    delta1: int
    delta2: int
    delta3: int

    def __post_init__(self) -> None:
        if any(d not in (1, -1) for d in self.as_tuple()):
            raise SignAmbiguity(f"signs must be +-1, got {self.as_tuple()}")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.delta1, self.delta2, self.delta3)


def delta_signs(G: FiniteGroup, case: str, n: int, q: int | None = None) -> DeltaSigns | None:
    """Recover (delta1, delta2, delta3) from the character values on the cyclic part of P.

    delta1 is the constant value on s, ..., s^(2^(n-2)) of the non-trivial height-zero
    character that is constant there; it must agree with the sign pattern of the
    height-one characters at z.  delta2, delta3 are the values at s of the two
    remaining height-zero characters, larger degree first.  Cases a and b carry
    no signs and return None.
    """
    if case in "ab":
        _check_params(case, n, q)
        return None
    ctx = _context(G, case, n, q)
    T, B, frame = ctx.table, ctx.block, ctx.frame
    half = 2 ** (n - 2)
    cls = [G.class_of(frame.s ** a) for a in range(1, half + 1)]

    def val(i: int, k: int) -> int:
        v = T.chars[i][cls[k]]
        if not v.is_integer():
            raise SignAmbiguity(f"row {i} is irrational at s^{k + 1}")
        return int(v)

    zero = [i for i in B.height_zero if any(v != 1 for v in T.chars[i])]
    if len(zero) != 3:
        raise SignAmbiguity(f"expected 3 non-trivial height-zero rows, found {len(zero)}")
    const = [i for i in zero if len({val(i, k) for k in range(half)}) == 1]
    if len(const) != 1:
        raise SignAmbiguity(f"{len(const)} height-zero rows are constant on the cyclic part")
    d1 = val(const[0], 0)
    one = [i for i, h in zip(B.rows, B.heights) if h == 1]
    zsum = sum(T.chars[i][cls[-1]] for i in one) if one else Cyclotomic.integer(T.N, 0)
    if zsum != -2 * d1:
        raise SignAmbiguity("height-one values at z disagree with delta1")
    rest = sorted((i for i in zero if i != const[0]), key=lambda i: (-T.degrees[i], i))
    d2, d3 = (val(i, 0) for i in rest)
    for i, d in zip(rest, (d2, d3)):
        # chi_i(s^a) = delta (-1)^(a+1)
        if any(val(i, k) != d * (1 if k % 2 == 0 else -1) for k in range(half)):
            raise SignAmbiguity(f"row {i} does not follow the alternating sign pattern")
    return DeltaSigns(d1, d2, d3)
