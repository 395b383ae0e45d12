"""Command-line interface: run catalog scenarios or solve ad-hoc problems.

Problem files are line-oriented with `#` comments:

    modulus K
    rank N
    gen NAME PERM              # 1-based cycle notation, e.g. (1 2 3)(4 5)
    action NAME                # followed by N lines of N integers
    relator WORD defect V1 ... VN
    subgroup NAME              # followed by rows of N integers
    task KIND ARGS

Exit codes: 0 success/PASS, 1 expectation FAIL, 2 input error, 3 budget
exceeded.  Output is byte-deterministic; the trailing key=value block is the
machine-readable contract.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import action as ac
from . import extension as ex
from . import lift as lf
from . import zkmod as zk
from .scenarios import UnknownScenario, fmt_value, scenario, scenario_names


class ParseError(Exception):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class ValidationError(Exception):
    pass


@dataclass
class ProblemFile:
    modulus: int = -1
    rank: int = -1
    gens: list = field(default_factory=list)  # (name, cycle string)
    matrices: dict = field(default_factory=dict)  # name -> rows
    relators: list = field(default_factory=list)  # (word, defect coords)
    subgroups: dict = field(default_factory=dict)  # name -> SubgroupBasis
    task: tuple = ()

    def gen_names(self) -> tuple:
        return tuple(n for n, _ in self.gens)

    def action(self) -> ac.Action:
        names = self.gen_names()
        missing = [n for n in names if n not in self.matrices]
        if missing:
            raise ValidationError(f"no action matrix for generator(s) {', '.join(missing)}")
        mats = tuple(zk.MatrixZk(zk.Modulus(self.modulus), self.matrices[n]) for n in names)
        return ac.Action(zk.Modulus(self.modulus), self.rank, names, mats)

    def finite_group(self) -> ex.FiniteGroup:
        return ex.realize_group(
            self.gen_names(), [p for _, p in self.gens], [w for w, _ in self.relators], name="L"
        )

    def extension_spec(self) -> ex.ExtensionSpec:
        defects = tuple(zk.vector(self.modulus, d) for _, d in self.relators)
        return ex.ExtensionSpec(self.finite_group(), self.action(), defects)

    def subgroup(self, name: str) -> zk.SubgroupBasis:
        if name not in self.subgroups:
            raise ValidationError(f"unknown subgroup {name!r}")
        return self.subgroups[name]


def parse_problem(text: str) -> ProblemFile:
    pf = ProblemFile()
    lines = text.splitlines()
    pending_rows: Optional[list] = None
    pending_kind = ""
    pending_name = ""

    def close_pending(lineno):
        nonlocal pending_rows, pending_kind, pending_name
        if pending_rows is None:
            return
        if pending_kind == "action":
            if len(pending_rows) != pf.rank:
                raise ParseError(lineno, f"action {pending_name} needs {pf.rank} rows")
            mat = zk.MatrixZk(zk.Modulus(pf.modulus), tuple(map(tuple, pending_rows)))
            if not mat.is_invertible():
                raise ValidationError(f"action matrix {pending_name!r} is not invertible")
            pf.matrices[pending_name] = tuple(map(tuple, pending_rows))
        else:
            pf.subgroups[pending_name] = zk.span(pf.modulus, pf.rank, pending_rows)
        pending_rows = None

    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]
        if head not in ("modulus", "rank", "gen", "action", "relator", "subgroup", "task"):
            if pending_rows is not None:
                try:
                    row = [int(t) for t in tokens]
                except ValueError:
                    raise ParseError(lineno, f"expected integer row, got {line!r}") from None
                if len(row) != pf.rank:
                    raise ParseError(lineno, f"row has {len(row)} entries, rank is {pf.rank}")
                pending_rows.append(row)
                continue
            raise ParseError(lineno, f"unknown directive {head!r}")
        close_pending(lineno)
        if head == "modulus":
            try:
                pf.modulus = int(tokens[1])
                zk.Modulus(pf.modulus)
            except (IndexError, ValueError) as e:
                raise ParseError(lineno, f"bad modulus: {e}") from None
        elif head == "rank":
            try:
                pf.rank = int(tokens[1])
            except (IndexError, ValueError):
                raise ParseError(lineno, "bad rank") from None
            if pf.rank < 1:
                raise ParseError(lineno, "rank must be positive")
        elif head == "gen":
            if len(tokens) < 3:
                raise ParseError(lineno, "gen needs NAME PERM")
            name = tokens[1]
            if name in dict(pf.gens):
                raise ParseError(lineno, f"generator {name!r} redefined")
            perm = " ".join(tokens[2:])
            try:
                ex.perm_from_cycles(perm)
            except ValueError as e:
                raise ParseError(lineno, f"bad permutation: {e}") from None
            pf.gens.append((name, perm))
        elif head == "action":
            if pf.modulus < 0 or pf.rank < 0:
                raise ParseError(lineno, "modulus and rank must come first")
            if len(tokens) != 2:
                raise ParseError(lineno, "action needs exactly one NAME")
            if tokens[1] not in dict(pf.gens):
                raise ParseError(lineno, f"action for undeclared generator {tokens[1]!r}")
            pending_rows = []
            pending_kind = "action"
            pending_name = tokens[1]
        elif head == "relator":
            if "defect" not in tokens:
                raise ParseError(lineno, "relator needs 'defect' followed by a vector")
            at = tokens.index("defect")
            word = " ".join(tokens[1:at])
            if not word:
                raise ParseError(lineno, "empty relator word")
            try:
                defect = [int(t) for t in tokens[at + 1 :]]
            except ValueError:
                raise ParseError(lineno, "defect entries must be integers") from None
            if len(defect) != pf.rank:
                raise ParseError(lineno, f"defect has {len(defect)} entries, rank is {pf.rank}")
            names = dict(pf.gens)
            for letter, _ in ac._parse_word(word):
                if letter not in names:
                    raise ParseError(lineno, f"relator uses undeclared generator {letter!r}")
            pf.relators.append((word, defect))
        elif head == "subgroup":
            if pf.modulus < 0 or pf.rank < 0:
                raise ParseError(lineno, "modulus and rank must come first")
            if len(tokens) != 2:
                raise ParseError(lineno, "subgroup needs exactly one NAME")
            pending_rows = []
            pending_kind = "subgroup"
            pending_name = tokens[1]
        elif head == "task":
            pf.task = tuple(tokens[1:])
    close_pending(len(lines))
    if pf.modulus < 0 or pf.rank < 0:
        raise ValidationError("problem file must declare modulus and rank")
    return pf


class Report:
    def __init__(self, machine_only: bool):
        self.machine_only = machine_only
        self.prose: list = []
        self.pairs: list = []
        self.failed = False

    def say(self, text: str):
        self.prose.append(text)

    def put(self, key: str, value):
        self.pairs.append((key, fmt_value(value)))

    def check_line(self, label: str, ok: bool):
        self.put(f"check_{label}", "PASS" if ok else "FAIL")
        if not ok:
            self.failed = True

    def emit(self, out) -> int:
        if not self.machine_only:
            for line in self.prose:
                print(line, file=out)
        for key, value in self.pairs:
            print(f"{key}={value}", file=out)
        print(f"result={'FAIL' if self.failed else 'PASS'}", file=out)
        return 1 if self.failed else 0


def _load(path: str) -> ProblemFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_problem(fh.read())


def _echo(report: Report, pf: ProblemFile, path: str):
    report.put("file", path)
    report.put("modulus", pf.modulus)
    report.put("rank", pf.rank)


def _single_gen_lift_problem(pf: ProblemFile, gen: Optional[str]) -> lf.CyclicLiftProblem:
    names = pf.gen_names()
    if gen is None:
        if pf.task and pf.task[0] == "solve-lift" and len(pf.task) > 1:
            gen = pf.task[1]
        elif len(names) == 1:
            gen = names[0]
        else:
            raise ValidationError("ambiguous generator; pass --gen or a task directive")
    if gen not in names:
        raise ValidationError(f"unknown generator {gen!r}")
    act = pf.action()
    for word, defect in pf.relators:
        letters = ac._parse_word(word)
        if all(name == gen and exp > 0 for name, exp in letters):
            order = sum(exp for _, exp in letters)
            return lf.CyclicLiftProblem(
                act.matrix(gen), order, zk.vector(pf.modulus, defect)
            )
    raise ValidationError(f"no power relator for generator {gen!r}")


def cmd_scenario(args, out) -> int:
    if args.list:
        for name in scenario_names():
            print(name, file=out)
        return 0
    if not args.name:
        print("error: scenario name required (or --list)", file=sys.stderr)
        return 2
    sc = scenario(args.name)
    overrides = {}
    for key in ("k", "m", "gamma", "g", "budget", "workers"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    result = sc.run(**overrides)
    report = Report(args.machine)
    report.say(f"scenario {sc.name}: {sc.summary}")
    for c in result.checks:
        status = "PASS" if c.ok else "FAIL"
        report.say(f"  {status} {c.label}: expected={fmt_value(c.expected)} actual={fmt_value(c.actual)}")
    for key, value in result.data:
        report.put(key, value)
    for c in result.checks:
        report.check_line(c.label, c.ok)
    return report.emit(out)


def cmd_solve_lift(args, out) -> int:
    pf = _load(args.file)
    problem = _single_gen_lift_problem(pf, args.gen)
    decision = lf.cyclic_lift_solve(problem)
    report = Report(args.machine)
    _echo(report, pf, args.file)
    report.put("order", problem.order)
    if decision.solvable:
        report.say("lift exists: witness alpha below")
        report.put("verdict", "split")
        report.put("witness", decision.alpha)
        report.put("kernel", decision.kernel)
    else:
        report.say("no lift of the required order (norm equation unsolvable)")
        report.put("verdict", "non-split")
        report.put("certificate_image", decision.obstruction.image)
        report.put("certificate_residue", decision.obstruction.residue)
    return report.emit(out)


def cmd_core(args, out) -> int:
    pf = _load(args.file)
    name = args.subgroup or (pf.task[1] if pf.task and pf.task[0] == "core" and len(pf.task) > 1 else None)
    if name is None:
        raise ValidationError("no subgroup named; pass --subgroup or a task directive")
    sub = pf.subgroup(name)
    act = pf.action()
    result = ac.core(act, sub)
    report = Report(args.machine)
    _echo(report, pf, args.file)
    report.say(f"core of {name} under the action")
    report.put("subgroup", result)
    report.put("order", zk.subgroup_order(result) if pf.modulus else "infinite")
    report.put("invariants", zk.quotient_invariants(result))
    return report.emit(out)


def cmd_closure(args, out) -> int:
    pf = _load(args.file)
    name = args.subgroup or (pf.task[1] if pf.task and pf.task[0] == "closure" and len(pf.task) > 1 else None)
    if name is None:
        raise ValidationError("no subgroup named; pass --subgroup or a task directive")
    sub = pf.subgroup(name)
    spec = pf.extension_spec()
    rep = ex.galois_closure_pipeline(spec, sub, split_budget=args.budget)
    report = Report(args.machine)
    _echo(report, pf, args.file)
    report.say(f"Galois closure pipeline for N1 = {name}")
    report.put("n1", rep.n1)
    report.put("n2", rep.n2)
    report.put("ahat_invariants", rep.ahat_invariants)
    report.put("u_invariants", rep.u_invariants)
    report.put("k_invariants", rep.k_invariants)
    report.put("order", rep.order)
    report.put("verdict", "split" if rep.split else "non-split")
    if rep.complement is not None:
        report.put(
            "witness",
            ";".join(" ".join(str(x) for x in v) + f"@{l}" for v, l in rep.complement),
        )
    report.put("corollary_guarantee", rep.corollary_guarantee)
    if rep.group_name:
        report.put("group_name", rep.group_name)
    return report.emit(out)


def cmd_enumerate(args, out) -> int:
    pf = _load(args.file)
    index = args.index
    if index is None and pf.task and pf.task[0] == "enumerate" and len(pf.task) > 1:
        index = int(pf.task[1])
    if index is None:
        raise ValidationError("no index given; pass --index or a task directive")
    act = pf.action()
    contains_vecs = []
    if args.contains:
        sub = pf.subgroup(args.contains)
        contains_vecs = [zk.ModuleVector(sub.modulus, r) for r in sub.rows]
    constraints = ac.EnumConstraints(
        quotient_invariants=(index,), contains_vectors=tuple(contains_vecs), budget=args.budget
    )
    subs = ac.enumerate_invariant_subgroups(act, constraints, workers=args.workers)
    report = Report(args.machine)
    _echo(report, pf, args.file)
    report.say(f"invariant subgroups of index {index}: {len(subs)}")
    report.put("count", len(subs))
    for i, s in enumerate(subs):
        report.put(f"subgroup_{i}", s)
    return report.emit(out)


def cmd_identify(args, out) -> int:
    pf = _load(args.file)
    name = args.subgroup or (pf.task[1] if pf.task and pf.task[0] == "identify" and len(pf.task) > 1 else None)
    sub = pf.subgroup(name) if name else zk.trivial_subgroup(pf.modulus, pf.rank)
    spec = pf.extension_spec()
    grp = ex.build_ext_group(spec, sub)
    witness = None
    if grp.quotient.size ** len(spec.group.names) <= args.budget:
        witness = ex.split_test(grp, budget=args.budget)
    ide = ex.identify(grp, budget=args.budget, split_flag=witness is not None)
    fp = ide.fingerprint
    report = Report(args.machine)
    _echo(report, pf, args.file)
    report.say("extension group fingerprint")
    report.put("order", fp.order)
    report.put("invariants", fp.abelian_invariants)
    report.put("order_histogram", ";".join(f"{o}:{c}" for o, c in fp.order_histogram))
    report.put("center_order", fp.center_order)
    report.put("derived_order", fp.derived_order)
    report.put("verdict", "split" if witness is not None else "non-split")
    report.put("name", ide.name or "unrecognized")
    return report.emit(out)


def cmd_check(args, out) -> int:
    pf = _load(args.file)
    report = Report(args.machine)
    _echo(report, pf, args.file)
    act = pf.action()
    group = pf.finite_group()
    report.put("group_order", group.order)
    report.check_line("generators_generate", group.order >= 1)
    ident = zk.MatrixZk.identity(pf.modulus, pf.rank)
    for word, _ in pf.relators:
        ok = act.word_matrix(word).rows == ident.rows
        report.check_line(f"relator_matrix_trivial_{word.replace(' ', '')}", ok)
    try:
        order = ex.coset_enumerate(pf.gen_names(), [w for w, _ in pf.relators], budget=args.budget)
        report.put("presentation_order", order)
        report.check_line("presentation_matches_permutations", order == group.order)
    except ex.Undecided:
        report.put("presentation_order", "undecided")
    for name, sub in sorted(pf.subgroups.items()):
        report.put(f"subgroup_{name}_invariant", ac.is_invariant(act, sub))
    if pf.modulus:
        spec = pf.extension_spec()
        for name, sub in sorted(pf.subgroups.items()):
            if ac.is_invariant(act, sub):
                try:
                    ex.solve_edge_defects(spec, sub)
                    report.check_line(f"defects_consistent_mod_{name}", True)
                except ex.InconsistentDefects:
                    report.check_line(f"defects_consistent_mod_{name}", False)
    return report.emit(out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homolift",
        description="exact splitting and Galois-closure computations for homology-cover deck groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_file=True):
        if needs_file:
            p.add_argument("--file", required=True, help="problem file")
        p.add_argument("--machine", action="store_true", help="suppress prose")
        p.add_argument("--budget", type=int, default=1_000_000)
        p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("scenario", help="run a named catalog scenario")
    p.add_argument("name", nargs="?", help="scenario name")
    p.add_argument("--list", action="store_true", help="list scenario names")
    p.add_argument("--machine", action="store_true")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--gamma", type=int, default=None)
    p.add_argument("--g", type=int, default=None)
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("solve-lift", help="decide an order-preserving cyclic lift")
    common(p)
    p.add_argument("--gen", default=None)
    p.set_defaults(func=cmd_solve_lift)

    p = sub.add_parser("core", help="maximal invariant subgroup of a named subgroup")
    common(p)
    p.add_argument("--subgroup", default=None)
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("closure", help="full Galois-closure pipeline for a named subgroup")
    common(p)
    p.add_argument("--subgroup", default=None)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("enumerate", help="enumerate invariant subgroups of prime index")
    common(p)
    p.add_argument("--index", type=int, default=None)
    p.add_argument("--contains", default=None, help="subgroup name that results must contain")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("identify", help="fingerprint the extension group over a subgroup")
    common(p)
    p.add_argument("--subgroup", default=None)
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("check", help="run the consistency suite on a problem file")
    common(p)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except (ParseError, ValidationError, UnknownScenario, FileNotFoundError, zk.ZkmodError) as e:
        if isinstance(e, (ac.BudgetExceeded, ex.BudgetExceeded, ex.Undecided)):
            print(f"error: {e}", file=sys.stderr)
            return 3
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
