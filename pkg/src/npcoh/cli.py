"""Command-line front end: ``npcoh analyze``, ``npcoh verify`` and ``npcoh catalog``.

Exit codes: 0 success, 2 input error, 3 infinite codimension, 4 verification
mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import closed_form as cf
from .engine import cohomology_profile, default_window
from .errors import InfiniteCodimensionError, NpcohError
from .grading import WeightSystem, infer_weights, require_quasihomogeneous
from .milnor import count_vector, milnor_algebra
from .normal_forms import FAMILIES, catalog_sweep, parse_class, standard_polynomial
from .poly import Polynomial, default_variables, parse_polynomial

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INFINITE_CODIMENSION = 3
EXIT_MISMATCH = 4

MATCH = "MATCH"
MISMATCH = "MISMATCH"
SENTINEL_VERDICT = "SENTINEL"
INFINITE_VERDICT = "INFINITE"

MODES = ("closed", "brute", "verify")


@dataclass
class AnalysisRequest:
    f: Polynomial
    weights: WeightSystem
    variables: list[str]
    p_values: list[int]
    mode: str = "closed"
    window: tuple[int, int] | None = None
    label: str = ""

    def __post_init__(self):
        if not self.p_values:
            raise ValueError("the list of p values is empty")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {', '.join(MODES)}")
        if self.window is not None and self.window[0] > self.window[1]:
            raise ValueError(f"window lower bound {self.window[0]} exceeds upper bound {self.window[1]}")


@dataclass
class DegreeEntry:
    k: int
    status: str
    dim: object  # int, "infinite" or None
    generators: list[dict] = field(default_factory=list)
    placement: dict[str, int] = field(default_factory=dict)
    e_dim: int | None = None
    profile: dict | None = None


@dataclass
class TwistResult:
    n: int
    weights: list[int]
    N: int
    codimension: int
    basis: list[str]
    r: dict[str, int]
    s: int
    p: int
    cohomology: list[DegreeEntry]
    verdicts: dict[str, str]
    label: str = ""

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "TwistResult":
        d = dict(d)
        d["cohomology"] = [DegreeEntry(**e) for e in d["cohomology"]]
        return cls(**d)


@dataclass
class AnalysisResult:
    twists: list[TwistResult]

    def to_dict(self) -> list[dict]:
        return [t.to_dict() for t in self.twists]

    @classmethod
    def from_dict(cls, items: list[dict]) -> "AnalysisResult":
        return cls([TwistResult.from_dict(d) for d in items])

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "AnalysisResult":
        return cls.from_dict(json.loads(text))

    @property
    def mismatches(self) -> list[tuple[int, int]]:
        return [
            (t.p, int(k)) for t in self.twists for k, v in t.verdicts.items() if v == MISMATCH
        ]


# -- analysis -----------------------------------------------------------------


def _verdict(entry: cf.ClosedFormEntry, profile) -> str:
    if entry.status == cf.SENTINEL:
        return SENTINEL_VERDICT
    if entry.status == cf.INFINITE:
        return INFINITE_VERDICT if profile.nonstabilizing_evidence() else MISMATCH
    ok = (
        profile.total == entry.dimension
        and profile.stabilized
        and profile.per_degree == entry.placement
    )
    return MATCH if ok else MISMATCH


def analyze_twist(req: AnalysisRequest, p: int, algebra=None) -> TwistResult:
    f, W, names = req.f, req.weights, req.variables
    A = algebra or milnor_algebra(f, W)
    report = cf.full_report(f, W, p, A)
    cv = count_vector(A, W.n - p)
    cohomology = []
    verdicts = {}
    window = req.window or default_window(f, W, p)
    for k in range(W.n + 1):
        e = report.entries[k]
        profile = None
        if req.mode in ("brute", "verify"):
            prof = cohomology_profile(f, W, p, k, window)
            profile = prof.to_dict()
            if req.mode == "verify":
                verdicts[str(k)] = _verdict(e, prof)
        cohomology.append(
            DegreeEntry(
                k=k,
                status=e.status,
                dim=e.dim_value(),
                generators=[g.to_dict(names) for g in e.generators],
                placement={str(m): c for m, c in e.placement.items()},
                e_dim=e.e_dimension,
                profile=profile,
            )
        )
    return TwistResult(
        n=W.n,
        weights=list(W.weights),
        N=report.N,
        codimension=A.codimension,
        basis=[Polynomial.monomial(b).to_string(names) for b in A.basis],
        r={str(j): v for j, v in cv.r.items()},
        s=cv.s,
        p=p,
        cohomology=cohomology,
        verdicts=verdicts,
        label=req.label,
    )


def _thread_count() -> int:
    raw = os.environ.get("NPCOH_THREADS", "1").strip() or "1"
    try:
        t = int(raw)
    except ValueError:
        raise ValueError(f"NPCOH_THREADS must be a non-negative integer, got {raw!r}") from None
    if t < 0:
        raise ValueError(f"NPCOH_THREADS must be a non-negative integer, got {raw!r}")
    if t == 0:
        return os.cpu_count() or 1
    return t


def analyze(req: AnalysisRequest) -> AnalysisResult:
    A = milnor_algebra(req.f, req.weights)
    ps = sorted(set(req.p_values))
    workers = min(_thread_count(), len(ps))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            twists = list(pool.map(analyze_twist, [req] * len(ps), ps, [A] * len(ps)))
    else:
        twists = [analyze_twist(req, p, A) for p in ps]
    return AnalysisResult(twists)


# -- rendering ------------------------------------------------------------------


def _dim_text(d) -> str:
    return "?" if d is None else str(d)


def render_text(result: AnalysisResult) -> str:
    lines = []
    for t in result.twists:
        head = f"{t.label}  " if t.label else ""
        lines.append(
            f"{head}n={t.n} weights=({','.join(map(str, t.weights))}) N={t.N} "
            f"c={t.codimension} p={t.p} q={t.n - t.p}"
        )
        lines.append(f"  B = {{{', '.join(t.basis)}}}")
        r = ", ".join(f"r{j}={v}" for j, v in t.r.items())
        lines.append(f"  {r + ', ' if r else ''}s={t.s}")
        rows = [("k", "status", "dim", "profile", "verdict", "generators")]
        for e in t.cohomology:
            prof = ""
            if e.profile is not None:
                pd = e.profile["per_degree"]
                prof = " ".join(f"{m}:{d}" for m, d in list(pd.items())[:6])
                if len(pd) > 6:
                    prof += " ..."
                prof = prof or "-"
            gens = ", ".join(f"{g['label']}@{g['degree']}" for g in e.generators)
            rows.append(
                (str(e.k), e.status, _dim_text(e.dim), prof, t.verdicts.get(str(e.k), ""), gens)
            )
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        for r in rows:
            lines.append("  " + "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        lines.append("")
    return "\n".join(lines)


# -- argument handling --------------------------------------------------------------


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def _signs(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    out = []
    for tok in text.replace(" ", "").split(","):
        if tok in ("+", "+1", "1"):
            out.append(1)
        elif tok in ("-", "-1"):
            out.append(-1)
        else:
            raise ValueError(f"bad sign {tok!r}")
    return tuple(out)


def _window(text: str | None):
    if text is None:
        return None
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ValueError(f"window must look like LO:HI, got {text!r}")
    return int(lo), int(hi)


def _add_common(sp):
    src = sp.add_argument_group("germ")
    src.add_argument("--poly", help="polynomial, e.g. 'x1^3+x2^2+x3^2'")
    src.add_argument("--vars", help="comma-separated variable names (default x1..xn)")
    src.add_argument("--weights", help="comma-separated positive weights (inferred if omitted)")
    src.add_argument("--class", dest="cls", help="normal form: A2, D5, E7, regular, quadratic")
    src.add_argument("--n", type=int, help="ambient dimension for --class, or for --poly with default names")
    src.add_argument("--signs", help="signs of the square terms for --class, e.g. '+,-,+'")
    sp.add_argument("--p", type=int, action="append", help="twist p (repeatable; default 0 and n-2)")
    sp.add_argument("--window", help="quasidegree window LO:HI for brute-force profiles")
    sp.add_argument("--json", action="store_true", help="emit JSON")
    sp.add_argument("--out", help="write output to FILE instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="npcoh", description="Nambu-Poisson cohomology of quasihomogeneous germs"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", help="closed-form report, optionally with brute-force profiles")
    _add_common(a)
    a.add_argument("--mode", choices=MODES, default="closed")
    v = sub.add_parser("verify", help="closed form against brute force (same as analyze --mode verify)")
    _add_common(v)
    c = sub.add_parser("catalog", help="sweep the normal-form catalog")
    c.add_argument("--families", default="A,D,E,regular", help=f"comma-separated subset of {','.join(FAMILIES)}")
    c.add_argument("--n", default="3,4", help="comma-separated ambient dimensions")
    c.add_argument("--max-index", type=int, default=None, help="cap on the index k (default: A, D up to 6 and E6..E8)")
    c.add_argument("--p", type=int, action="append")
    c.add_argument("--mode", choices=MODES, default="verify")
    c.add_argument("--window")
    c.add_argument("--json", action="store_true")
    c.add_argument("--out")
    return parser


def request_from_args(args) -> AnalysisRequest:
    if bool(args.poly) == bool(args.cls):
        raise ValueError("give exactly one of --poly and --class")
    if args.cls:
        if args.n is None:
            raise ValueError("--class needs --n")
        cls = parse_class(args.cls, args.n, _signs(args.signs))
        f, W, _ = standard_polynomial(cls)
        names = default_variables(args.n)
        label = cls.name
    else:
        if args.vars:
            names = [v.strip() for v in args.vars.split(",") if v.strip()]
        elif args.n is not None:
            names = default_variables(args.n)
        elif args.weights:
            names = default_variables(len(_int_list(args.weights)))
        else:
            names = _guess_variables(args.poly)
        f = parse_polynomial(args.poly, names)
        if args.weights:
            W = WeightSystem(tuple(_int_list(args.weights)))
            if W.n != f.n:
                raise ValueError(f"{W.n} weights for {f.n} variables")
        else:
            W, _ = infer_weights(f)
        require_quasihomogeneous(f, W)
        label = ""
    n = len(names)
    ps = args.p if args.p else [0, n - 2]
    mode = "verify" if args.command == "verify" else args.mode
    return AnalysisRequest(f, W, names, ps, mode, _window(args.window), label)


def _guess_variables(text: str) -> list[str]:
    """Default names x1..xn with n the largest index mentioned (at least 3)."""
    idx = [int(m) for m in re.findall(r"x(\d+)", text)]
    return default_variables(max(idx + [3]))


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _run_catalog(args) -> int:
    families = [s.strip() for s in args.families.split(",") if s.strip()]
    classes = catalog_sweep(_int_list(args.n), families, args.max_index)
    results = []
    for cls in classes:
        f, W, _ = standard_polynomial(cls)
        names = default_variables(cls.n)
        ps = args.p if args.p else [0, cls.n - 2]
        req = AnalysisRequest(f, W, names, ps, args.mode, _window(args.window), cls.name)
        results.append(analyze(req))
    merged = AnalysisResult([t for r in results for t in r.twists])
    if args.json:
        _emit(merged.to_json(), args.out)
    else:
        rows = [("class", "n", "N", "c", "p", "dims", "verdicts")]
        for t in merged.twists:
            dims = "(" + ",".join(_dim_text(e.dim) for e in t.cohomology) + ")"
            verdict = " ".join(sorted(set(t.verdicts.values()))) or "-"
            rows.append((t.label, str(t.n), str(t.N), str(t.codimension), str(t.p), dims, verdict))
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        _emit("\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows), args.out)
    return EXIT_MISMATCH if merged.mismatches else EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "catalog":
            return _run_catalog(args)
        req = request_from_args(args)
        result = analyze(req)
    except InfiniteCodimensionError as e:
        print(f"npcoh: infinite codimension: {e}", file=sys.stderr)
        return EXIT_INFINITE_CODIMENSION
    except (NpcohError, ValueError) as e:
        print(f"npcoh: {e}", file=sys.stderr)
        return EXIT_INPUT
    _emit(result.to_json() if args.json else render_text(result), args.out)
    if result.mismatches:
        listed = ", ".join(f"(p={p}, k={k})" for p, k in result.mismatches)
        print(f"npcoh: mismatches at {listed}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
