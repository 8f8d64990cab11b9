"""Command-line interface: ``ladderdist dist|check|compose``.

Exit codes: 0 ok, 2 usage or malformed input, 3 verification failure,
4 oracle budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import families, graphfam, peaks
from .oracle import BudgetExceeded, DEFAULT_BUDGET, build_named_graph, enumerate_distribution, read_edge_list
from .oracle.graphs import GraphError
from .seqcore import GenusDistribution, SequenceError, is_log_concave, is_unimodal, mode_interval, trimmed

log = logging.getLogger("ladderdist")

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_BUDGET = 0, 2, 3, 4
ORACLE_FAMILIES = ("L", "CL", "ML", "RL")
AUTO_ORACLE_LIMIT = 1 << 12


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    pass


@dataclass
class OutputRecord:
    subject: str
    n: int | None
    method: str
    dist: GenusDistribution

    def to_dict(self) -> dict:
        mi = mode_interval(self.dist)
        return {
            "subject": self.subject,
            "n": self.n,
            "method": self.method,
            "min_genus": self.dist.offset,
            "counts": [str(c) for c in self.dist.counts],
            "unimodal": is_unimodal(self.dist),
            "log_concave": is_log_concave(self.dist),
            "modes": [mi.l, mi.m],
        }


def record_from_json(line: str) -> OutputRecord:
    obj = json.loads(line)
    dist = GenusDistribution(obj["min_genus"], tuple(int(c) for c in obj["counts"]))
    return OutputRecord(obj["subject"], obj["n"], obj["method"], dist)


def render(records: list[OutputRecord], fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(r.to_dict()) + "\n" for r in records)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        multi = len(records) > 1
        for r in records:
            for genus, count in r.dist.items():
                w.writerow([r.n, genus, count] if multi else [genus, count])
        return buf.getvalue()
    lines = []
    for r in records:
        d = r.to_dict()
        lines.append(
            f"{r.subject} n={r.n} method={r.method} min_genus={d['min_genus']} "
            f"modes={d['modes']} unimodal={d['unimodal']} log_concave={d['log_concave']}"
        )
        lines.extend(f"  {g:>4}  {c}" for g, c in r.dist.items())
    return "\n".join(lines) + "\n"


def _n_values(args) -> list[int]:
    if args.n is not None and args.n_range is not None:
        raise UsageError("use either --n or --n-range, not both")
    if args.n_range is not None:
        m = re.fullmatch(r"(\d+)\.\.(\d+)", args.n_range)
        if not m or int(m.group(1)) > int(m.group(2)):
            raise UsageError(f"bad --n-range {args.n_range!r}; expected a..b with a <= b")
        return list(range(int(m.group(1)), int(m.group(2)) + 1))
    if args.n is None:
        raise UsageError("one of --n or --n-range is required")
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    return [args.n]


def _oracle(tag: str, n: int, args) -> GenusDistribution:
    return enumerate_distribution(build_named_graph(tag, n), budget=args.budget, jobs=args.jobs)


def _surface_dist(j: int, n: int, method: str) -> GenusDistribution:
    if method == "oracle":
        raise UsageError("--method oracle applies to graph families only")
    try:
        return families.family_distribution(j, n, method)
    except families.MethodUnavailable as exc:
        raise UsageError(str(exc)) from None
    except families.CrossCheckMismatch as exc:
        raise VerificationFailed(str(exc)) from None


def _named_dist(tag: str, n: int, args) -> GenusDistribution:
    method = args.method
    if n < 1:
        raise UsageError(f"{tag}_n needs n >= 1")
    if method == "closed":
        raise UsageError("--method closed applies to s1, s3, s5, s6, s9 only")
    if method == "oracle":
        if tag not in ORACLE_FAMILIES:
            raise UsageError(f"no oracle construction for {tag}")
        try:
            return _oracle(tag, n, args)
        except BudgetExceeded:
            raise
        except GraphError as exc:
            raise UsageError(str(exc)) from None
    dist = graphfam.genus_poly(tag, n)
    if method == "auto" and tag in ORACLE_FAMILIES and graphfam.NamedFamily(tag, n).oracle_verifiable:
        g = build_named_graph(tag, n)
        if g.rotation_count() <= AUTO_ORACLE_LIMIT:
            brute = enumerate_distribution(g, jobs=args.jobs)
            if brute != dist:
                raise VerificationFailed(f"{tag}_{n}: formula {dist} != oracle {brute}")
    return dist


def _p52_dist(which: str, n: int, method: str) -> GenusDistribution:
    if method in ("closed", "oracle"):
        raise UsageError(f"--method {method} does not apply to {which}")
    p1, p2 = graphfam.p52_sequences(max(n, 1))
    d = p1[n] if which == "p52a" else p2[n]
    if d is None:
        raise UsageError("p52b is undefined at n = 0")
    return d


def cmd_dist(args) -> list[OutputRecord]:
    fam = args.family
    if fam == "custom":
        if args.graph is None:
            raise UsageError("--family custom needs --graph FILE")
        if args.method != "oracle":
            raise UsageError("--family custom supports --method oracle only")
        try:
            g = read_edge_list(args.graph)
        except (OSError, GraphError) as exc:
            raise UsageError(str(exc)) from None
        return [OutputRecord("custom", None, "oracle", enumerate_distribution(g, budget=args.budget, jobs=args.jobs))]
    out = []
    m = re.fullmatch(r"s(\d+)", fam)
    for n in _n_values(args):
        if m:
            j = int(m.group(1))
            if j not in families.FAMILIES:
                raise UsageError(f"surface family must be s1..s11, got {fam}")
            dist = _surface_dist(j, n, args.method)
        elif fam in graphfam.NAMED:
            dist = _named_dist(fam, n, args)
        elif fam in ("p52a", "p52b"):
            dist = _p52_dist(fam, n, args.method)
        else:
            raise UsageError(f"unknown family {fam!r}")
        out.append(OutputRecord(fam, n, args.method, dist))
    return out


# -- check ----------------------------------------------------------------------

def _suite_peaks(max_n: int) -> tuple[list[str], list[str]]:
    table = families.build_table(max_n + 1)
    lines, failures = [], []
    subjects = list(families.FAMILIES) + list(peaks.GRAPH_FAMILIES)
    for subject in subjects:
        for r in peaks.verify_peaks(subject, range(1, max_n + 1), table=table):
            if r.formula_modes is None:
                lines.append(f"info  {r.subject} n={r.n} formula-absent empirical={r.empirical_modes}")
                continue
            ok = r.agree and r.unimodal
            line = (f"{'pass' if ok else 'FAIL'}  {r.subject} n={r.n} formula={r.formula_modes} "
                    f"empirical={r.empirical_modes} ceiling={r.ceiling_modes} unimodal={r.unimodal}")
            lines.append(line)
            if not ok:
                failures.append(line)
    for c in peaks.inequality_report(max_n, table=table):
        line = f"{'pass' if c.passed else 'FAIL'}  {c.name} n={c.n} peak={c.peak}"
        lines.append(line)
        if not c.passed:
            failures.append(line)
    return lines, failures


def _suite_identities(max_n: int):
    lines, failures = [], []
    for c in families.relation_report(max(max_n, 2)):
        line = f"{'pass' if c.passed else 'FAIL'}  {c.name} n={c.n} {c.detail}".rstrip()
        lines.append(line)
        if not c.passed:
            failures.append(line)
    return lines, failures


def _suite_totals(max_n: int):
    table = families.build_table(max_n + 1)
    lines, failures = [], []
    for j in families.FAMILIES:
        for n in range(1, max_n + 1):
            ok = table.get(j, n).total == 4 ** n
            line = f"{'pass' if ok else 'FAIL'}  s{j} n={n} total=4^{n}"
            lines.append(line)
            if not ok:
                failures.append(line)
    for tag in graphfam.NAMED:
        for n in range(1, max_n + 1):
            want = 4 ** (n + 1) if tag in ("RL", "R") else 4 ** n
            ok = graphfam.genus_poly(tag, n, table).total == want
            line = f"{'pass' if ok else 'FAIL'}  {tag} n={n} total={'4^' + str(n + 1) if tag in ('RL', 'R') else '4^' + str(n)}"
            lines.append(line)
            if not ok:
                failures.append(line)
    return lines, failures


def _suite_logconcave(max_n: int):
    table = families.build_table(max_n + 1)
    lines, failures = [], []
    for j in families.FAMILIES:
        for n in range(1, max_n + 1):
            lc = is_log_concave(table.get(j, n))
            if j in (1, 4, 6):
                line = f"{'pass' if lc else 'FAIL'}  s{j} n={n} log_concave={lc}"
                if not lc:
                    failures.append(line)
            else:
                line = f"info  s{j} n={n} log_concave={lc}"
            lines.append(line)
    for tag in graphfam.NAMED:
        for n in range(1, max_n + 1):
            lines.append(f"info  {tag} n={n} log_concave={is_log_concave(graphfam.genus_poly(tag, n, table))}")
    return lines, failures


def _suite_p52(max_n: int):
    lines = [
        f"info  {f.sequence} n={f.n} unimodal={f.unimodal} log_concave={f.log_concave}"
        for f in graphfam.p52_findings(max(max_n, 1))
    ]
    return lines, []


SUITES = {
    "peaks": _suite_peaks,
    "identities": _suite_identities,
    "totals": _suite_totals,
    "logconcave": _suite_logconcave,
    "p52": _suite_p52,
}


def cmd_check(args) -> tuple[list[str], list[str]]:
    if args.max_n < 1:
        raise UsageError("--max-n must be >= 1")
    return SUITES[args.suite](args.max_n)


# -- compose --------------------------------------------------------------------

def parse_partials(text: str) -> graphfam.PartialPolySet:
    """Blocks of ``part j`` / ``min_degree d`` / ``coeffs c0 c1 ...`` lines.

    Missing blocks are zero polynomials.  Blank lines and ``#`` comments are
    ignored.
    """
    blocks: dict[int, dict] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *vals = line.split()
        if key == "part":
            if len(vals) != 1 or not vals[0].isdigit():
                raise UsageError(f"line {lineno}: expected 'part <j>'")
            j = int(vals[0])
            if j not in families.FAMILIES:
                raise UsageError(f"line {lineno}: part index must be in 1..11")
            if j in blocks:
                raise UsageError(f"line {lineno}: duplicate part {j}")
            current = blocks[j] = {}
        elif key in ("min_degree", "coeffs"):
            if current is None:
                raise UsageError(f"line {lineno}: {key} before any 'part'")
            if key in current:
                raise UsageError(f"line {lineno}: repeated {key}")
            try:
                nums = [int(v) for v in vals]
            except ValueError:
                raise UsageError(f"line {lineno}: {key} values must be decimal integers") from None
            if any(v < 0 for v in nums):
                raise UsageError(f"line {lineno}: negative value in {key}")
            if key == "min_degree" and len(nums) != 1:
                raise UsageError(f"line {lineno}: min_degree takes one value")
            if key == "coeffs" and not nums:
                raise UsageError(f"line {lineno}: coeffs needs at least one value")
            current[key] = nums[0] if key == "min_degree" else nums
        else:
            raise UsageError(f"line {lineno}: unknown key {key!r}")
    parts = {}
    for j, b in blocks.items():
        if "min_degree" not in b or "coeffs" not in b:
            raise UsageError(f"part {j} needs both min_degree and coeffs")
        d = trimmed(b["min_degree"], b["coeffs"])
        if d is not None:
            parts[j] = d
    try:
        return graphfam.PartialPolySet.from_dict(parts)
    except graphfam.GraphFamilyError as exc:
        raise UsageError(str(exc)) from None


def cmd_compose(args) -> OutputRecord:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    try:
        text = Path(args.partials).read_text()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    partials = parse_partials(text)
    return OutputRecord("compose", args.n, "compose", graphfam.compose_ladder(partials, args.n))


# -- entry point ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ladderdist", description="Genus distributions of ladder families.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dist", help="compute genus distributions")
    d.add_argument("--family", required=True,
                   help="s1..s11, L, CL, ML, RL, R, p52a, p52b or custom")
    d.add_argument("--n", type=int)
    d.add_argument("--n-range", help="inclusive range a..b")
    d.add_argument("--method", choices=("closed", "recurrence", "auto", "oracle"), default="auto")
    d.add_argument("--format", choices=("json", "csv", "table"), default="table")
    d.add_argument("--graph", help="edge-list file for --family custom")
    d.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    d.add_argument("--jobs", type=int, default=1)

    c = sub.add_parser("check", help="run a verification sweep")
    c.add_argument("--suite", choices=sorted(SUITES), required=True)
    c.add_argument("--max-n", type=int, default=30)
    c.add_argument("--all", action="store_true", help="print passing lines too")

    k = sub.add_parser("compose", help="compose partial polynomials with S_j^n")
    k.add_argument("--partials", required=True)
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--format", choices=("json", "csv", "table"), default="table")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "dist":
            sys.stdout.write(render(cmd_dist(args), args.format))
        elif args.command == "compose":
            sys.stdout.write(render([cmd_compose(args)], args.format))
        else:
            lines, failures = cmd_check(args)
            shown = lines if args.all or args.suite == "p52" else failures
            for line in shown:
                print(line)
            print(f"{args.suite}: {len(lines)} checks, {len(failures)} failed")
            return EXIT_VERIFY if failures else EXIT_OK
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (families.FamilyError, graphfam.GraphFamilyError, peaks.OutOfRange, SequenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
