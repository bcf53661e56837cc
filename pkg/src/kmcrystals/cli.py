"""Command-line interface.

JSON reports go to stdout and a one-line summary to stderr.  Exit codes:
0 verified or computed, 1 a checked statement failed, 2 invalid input,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import components as comp
from . import deepchamber as deep
from . import pathcrystal as pc
from . import rootdata as rd
from . import schur
from . import tensor
from . import virtualize as virt
from .errors import BudgetExceeded, CrystalError, TheoremViolation

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

STATEMENTS = (
    "lemma-nonzero",
    "epsilon",
    "mu-dominant",
    "thm-component",
    "wahl",
    "schur-star",
    "transfer",
    "support-transfer",
    "deep",
    "deep-decompose",
    "lifting",
    "kk",
    "kostant",
    "stembridge",
    "virtual-validate",
    "virtual-decompose",
    "virtual-epsilon",
    "virtual-component",
)

SCANS = ("lemma", "epsilon", "theorem", "transfer", "deep")


def _s(x) -> str:
    return str(rd._norm(x)) if isinstance(x, (int, Fraction)) else str(x)


def _w(w):
    return None if w is None else [_s(c) for c in w]


# ---------------------------------------------------------------------------
# argument helpers


def _gcm(args) -> rd.GCM:
    if args.gcm:
        with open(args.gcm) as fh:
            return rd.gcm_from_json(json.load(fh))
    if not args.type:
        raise CrystalError("pass --type or --gcm")
    try:
        return rd.cartan_matrix(args.type)
    except KeyError as exc:
        raise CrystalError(str(exc)) from exc


def _weight(g: rd.GCM, text, name: str):
    if text is None:
        raise CrystalError(f"--{name} is required")
    w = rd.parse_weight(text)
    if len(w) != g.n:
        raise CrystalError(f"--{name} needs {g.n} coordinates, got {len(w)}")
    return w


def _monomial(args) -> comp.Monomial:
    if not args.monomial:
        raise CrystalError("--monomial is required")
    return comp.Monomial.parse(args.monomial)


def _word(text) -> tuple:
    if not text:
        return ()
    return tuple(int(c) for c in text.replace(" ", "").split(",") if c)


def _quad(g: rd.GCM, args) -> schur.Quadruple:
    if not args.quad:
        raise CrystalError("--quad is required")
    q = schur.Quadruple.parse(args.quad)
    if len(q.lam1) != g.n:
        raise CrystalError(f"quadruple weights need {g.n} coordinates")
    return q


def _folding(args) -> virt.Folding:
    if args.folding:
        with open(args.folding) as fh:
            return virt.folding_from_json(json.load(fh), budget=args.budget_nodes or virt.DEFAULT_BUDGET)
    return virt.standard_folding(args.type, args.budget_nodes or virt.DEFAULT_BUDGET)


# ---------------------------------------------------------------------------
# commands; each returns (report, ok, summary)


def cmd_decompose(args):
    g = _gcm(args)
    lam, mu = _weight(g, args.lam, "lambda"), _weight(g, args.mu, "mu")
    d = tensor.decompose(g, lam, mu)
    rep = d.to_json(g)
    lines = [f"V{nu} x{m} dim {tensor.weyl_dim(g, nu)}" for nu, m in d.summands.items()]
    return rep, rep["dim_check"], "\n".join(lines + [f"dim_check {rep['dim_check']}"])


def cmd_crystal(args):
    g = _gcm(args)
    lam = _weight(g, args.lam, "lambda")
    graph = pc.generate_crystal(g, lam, budget=args.budget_nodes)
    if args.dot:
        return pc.to_dot(graph), True, f"{len(graph)} nodes"
    rep = {
        "lambda": _w(lam),
        "size": len(graph),
        "character": [{"weight": _w(w), "mult": m} for w, m in sorted(graph.character().items(), reverse=True)],
    }
    return rep, True, f"{len(graph)} nodes"


def _check(args):
    st = args.statement
    if st.startswith("virtual-"):
        return _check_virtual(args)
    g = _gcm(args)
    finite = g.is_finite
    rep = {"statement": st, "type": g.label}

    if st == "lemma-nonzero":
        lam, m = _weight(g, args.lam, "lambda"), _monomial(args)
        value = comp.check_monomial_nonzero(g, lam, m)
        rep.update(monomial=str(m), value=value)
        ok = True
        if finite:
            replay = pc.monomial_apply(g, lam, m.factors) is not None
            rep["replay"] = replay
            ok = replay == value
        return rep, ok, f"nonzero: {value}"

    if st == "epsilon":
        lam, m = _weight(g, args.lam, "lambda"), _monomial(args)
        if not comp.check_monomial_nonzero(g, lam, m):
            raise CrystalError("the monomial element is zero")
        prof = comp.epsilon_profile(g, m)
        rep.update(monomial=str(m), epsilon=list(prof))
        ok = True
        if finite:
            path = pc.monomial_apply(g, lam, m.factors)
            direct = [pc.epsilon(path, i) for i in g.nodes]
            rep["replay"] = direct
            ok = tuple(direct) == prof
        return rep, ok, f"epsilon {list(prof)}"

    if st == "mu-dominant":
        lam, mu, m = _weight(g, args.lam, "lambda"), _weight(g, args.mu, "mu"), _monomial(args)
        value = comp.check_mu_dominant(g, lam, mu, m)
        rep.update(monomial=str(m), value=value)
        ok = True
        if finite:
            path = pc.monomial_apply(g, lam, m.factors)
            replay = path is not None and tensor.is_lambda_dominant(path, mu)
            rep["replay"] = replay
            ok = replay == value
        return rep, ok, f"mu-dominant: {value}"

    if st == "thm-component":
        lam, mu, m = _weight(g, args.lam, "lambda"), _weight(g, args.mu, "mu"), _monomial(args)
        nu = comp.theorem_component(g, lam, mu, m)
        rep.update(monomial=str(m), nu=_w(nu), certificate=str(m) if nu else None)
        ok = True
        if nu is not None and finite:
            c = tensor.tensor_multiplicity(g, lam, mu, nu)
            rep["multiplicity"] = c
            ok = c > 0
        return rep, ok, f"component {nu}"

    if st == "wahl":
        lam, mu, beta = _weight(g, args.lam, "lambda"), _weight(g, args.mu, "mu"), _weight(g, args.beta, "beta")
        r = comp.wahl_check(g, lam, mu, beta, args.N)
        rep.update(r.to_json())
        ok = r.holds or not r.conditions_hold
        if r.holds:
            c = tensor.tensor_multiplicity(g, lam, mu, r.target)
            rep["multiplicity"] = c
            ok = c >= len(r.witnesses)
        return rep, ok, f"wahl conditions {r.conditions_hold}, holds {r.holds}"

    if st == "schur-star":
        q = _quad(g, args)
        r = schur.full_schur_check(g, q)
        rep.update(r.to_json())
        return rep, True, f"(*) {r.star}, {len(r.violations)} multiplicity violations"

    if st == "transfer":
        q, m = _quad(g, args), _monomial(args)
        sigma = schur.transfer_sigma(g, q, m.indices)
        word = tuple(m.indices[k] for k in sigma)
        path = pc.monomial_apply(g, q.lam2, [(i, 1) for i in word])
        ok = path is not None and tensor.is_lambda_dominant(path, q.lam1)
        rep.update(indices=list(m.indices), sigma=list(sigma), word=list(word), replay=ok)
        return rep, ok, f"sigma {sigma}"

    if st == "support-transfer":
        q, beta = _quad(g, args), _weight(g, args.beta, "beta")
        r = schur.support_transfer(g, q, beta)
        rep.update(r.to_json())
        return rep, r.holds, f"c34 {r.c34}, c12 {r.c12}"

    if st == "deep":
        if args.quad:
            q = _quad(g, args)
            value = deep.star_implies_containment(g, q)
            inner = deep.ShiftedWeylPolytope(g, q.lam3, q.lam4)
            rep.update(contained=value, vertices=[_w(v) for v in inner.vertices])
            return rep, value, f"containment {value}"
        lam, mu = _weight(g, args.lam, "lambda"), _weight(g, args.mu, "mu")
        value = deep.is_deep(g, lam, mu)
        rep.update(deep=value)
        return rep, True, f"deep {value}"

    if st == "deep-decompose":
        lam, mu = _weight(g, args.lam, "lambda"), _weight(g, args.mu, "mu")
        d = deep.deep_decompose(g, lam, mu)
        ok = d.summands == tensor.decompose(g, lam, mu).summands
        rep.update(d.to_json(g), replay=ok)
        return rep, ok, f"{len(d.summands)} components, replay {ok}"

    if st == "lifting":
        lam, mu = _weight(g, args.lam, "lambda"), _weight(g, args.mu, "mu")
        r = deep.lifting_check(g, lam, mu, _word(args.word), _word(args.word2))
        rep.update(vars(r), holds=r.holds)
        return rep, r.holds, f"lifting {r.holds}"

    if st == "kk":
        lam2, lam4 = _weight(g, args.lam, "lambda"), _weight(g, args.mu, "mu")
        value = deep.kk_containment(g, lam2, lam4, _word(args.word), _word(args.word2))
        rep.update(holds=value)
        return rep, value, f"Demazure containment {value}"

    if st == "kostant":
        decomposer = None
        if not g.is_simply_laced and g.label in ("B2", "B3", "C2", "C3", "G2"):
            f = virt.standard_folding(g.label)
            decomposer = lambda lam, mu: virt.virtual_decompose(f, lam, mu).summands  # noqa: E731
        r = comp.kostant_scan(g, decomposer=decomposer)
        rep.update(r.to_json())
        return rep, r.supports_match, f"supports match: {r.supports_match}"

    if st == "stembridge":
        lam = _weight(g, args.lam, "lambda")
        graph = pc.generate_crystal(g, lam, budget=args.budget_nodes)
        bad = pc.check_stembridge(graph)
        rep.update(size=len(graph), violations=bad)
        return rep, not bad, f"{len(bad)} violations on {len(graph)} nodes"

    raise CrystalError(f"unknown statement {st!r}")


def _check_virtual(args):
    st = args.statement
    f = _folding(args)
    g = f.child
    rep = {"statement": st, "folding": f.to_json()}

    if st == "virtual-validate":
        rep["battery"] = [_w(lam) for lam in f.battery()]
        return rep, True, f"{len(rep['battery'])} weights validated"

    if st == "virtual-decompose":
        lam, mu = _weight(g, args.lam, "lambda"), _weight(g, args.mu, "mu")
        d = virt.virtual_decompose(f, lam, mu)
        ok = d.dim_check(g)
        rep.update(d.to_json(g))
        return rep, ok, f"{len(d.summands)} components, dim_check {ok}"

    if st == "virtual-epsilon":
        lam, m = _weight(g, args.lam, "lambda"), _monomial(args)
        x = virt.virtual_monomial_apply(f, lam, m)
        if x is None:
            raise CrystalError("the monomial element is zero")
        values = [virt.folded_epsilon_formula(f, lam, m, r) for r in range(1, len(m) + 1)]
        direct = [virt.v_epsilon(f, x, i) for i in m.indices]
        rep.update(monomial=str(m), epsilon=values, replay=direct)
        return rep, values == direct, f"epsilon {values}"

    if st == "virtual-component":
        lam, mu, m = _weight(g, args.lam, "lambda"), _weight(g, args.mu, "mu"), _monomial(args)
        nu = virt.folded_component(f, lam, mu, m)
        rep.update(monomial=str(m), nu=_w(nu), certificate=str(m) if nu else None)
        ok = True
        if nu is not None:
            c = virt.virtual_decompose(f, lam, mu).summands.get(nu, 0)
            rep["multiplicity"] = c
            ok = c > 0
        return rep, ok, f"component {nu}"

    raise CrystalError(f"unknown statement {st!r}")


# ---------------------------------------------------------------------------
# scans


def _box(g, top):
    return list(itertools.product(range(top + 1), repeat=g.n))


def _monomials(g, bmax):
    for k in range(1, g.n + 1):
        for idx in itertools.permutations(g.nodes, k):
            for bs in itertools.product(range(1, bmax + 1), repeat=k):
                yield comp.Monomial(tuple(zip(idx, bs)))


def _scan_one(task):
    kind, label, lam, top, bmax = task
    g = rd.cartan_matrix(label)
    fails = []
    count = 0
    if kind in ("lemma", "epsilon"):
        for m in _monomials(g, bmax):
            count += 1
            path = pc.monomial_apply(g, lam, m.factors)
            if kind == "lemma":
                if (path is not None) != comp.check_monomial_nonzero(g, lam, m):
                    fails.append([_w(lam), str(m)])
            elif path is not None:
                if tuple(pc.epsilon(path, i) for i in g.nodes) != comp.epsilon_profile(g, m):
                    fails.append([_w(lam), str(m)])
    elif kind == "theorem":
        for m in _monomials(g, bmax):
            for mu in _box(g, top):
                nu = comp.theorem_component(g, lam, mu, m)
                if nu is None:
                    continue
                count += 1
                if tensor.tensor_multiplicity(g, lam, mu, nu) == 0:
                    fails.append([_w(lam), _w(mu), str(m)])
    elif kind == "transfer":
        for l2, l3 in itertools.product(_box(g, top), repeat=2):
            l4 = rd.sub(rd.add(lam, l2), l3)
            if not rd.is_dominant(l4):
                continue
            q = schur.Quadruple(lam, l2, l3, l4)
            if not schur.star_hypothesis(g, q):
                continue
            for k in range(1, g.n + 1):
                for nodes in itertools.combinations(g.nodes, k):
                    beta = rd.coeffs_to_weight(g, [1 if i in nodes else 0 for i in g.nodes])
                    count += 1
                    try:
                        schur.support_transfer(g, q, beta)
                    except TheoremViolation:
                        fails.append([_w(w) for w in (lam, l2, l3, l4)] + [list(nodes)])
    return count, fails


def _random_deep(g, rng, top):
    while True:
        l2 = tuple(rng.randint(0, top) for _ in g.nodes)
        l4 = tuple(rng.randint(0, top) for _ in g.nodes)
        l1 = tuple(rng.randint(0, 2 * top) + 2 * top * g.n for _ in g.nodes)
        l3 = rd.sub(rd.add(l1, l2), l4)
        if not rd.is_dominant(l3):
            continue
        q = schur.Quadruple(l1, l2, l3, l4)
        if schur.star_hypothesis(g, q) and deep.is_deep(g, l1, l2) and deep.is_deep(g, l3, l4):
            return q


def cmd_scan(args):
    g = _gcm(args)
    if not g.is_finite:
        raise CrystalError("scans need finite type")
    rep = {"scan": args.kind, "type": g.label, "seed": args.seed, "max_coord": args.max_coord}
    if args.kind == "deep":
        rng = random.Random(args.seed)
        fails = []
        for _ in range(args.samples):
            q = _random_deep(g, rng, args.max_coord)
            contained = deep.star_implies_containment(g, q)
            if contained == bool(schur.full_schur_check(g, q).violations):
                fails.append([_w(w) for w in (q.lam1, q.lam2, q.lam3, q.lam4)])
        rep.update(checked=args.samples, failures=fails)
        return rep, not fails, f"{args.samples} deep quadruples, {len(fails)} failures"
    tasks = [(args.kind, g.label, lam, args.max_coord, args.max_exp) for lam in _box(g, args.max_coord)]
    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_scan_one, tasks))
    else:
        results = [_scan_one(t) for t in tasks]
    fails = [f for _, fs in results for f in fs]
    checked = sum(c for c, _ in results)
    rep.update(checked=checked, failures=fails)
    return rep, not fails, f"{checked} instances, {len(fails)} failures"


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", help="Cartan type label, e.g. A3, D4, B2, A2^(1)")
    common.add_argument("--gcm", help="JSON file with {'type': ...} or {'matrix': [[...]]}")
    common.add_argument("--lambda", dest="lam", help="weight as comma separated coordinates")
    common.add_argument("--mu")
    common.add_argument("--monomial", help='e.g. "1:1,2:1" for f_1 f_2')
    common.add_argument("--beta")
    common.add_argument("--N", type=int, default=1)
    common.add_argument("--quad", help='four weights separated by ";"')
    common.add_argument("--word", help="comma separated node indices")
    common.add_argument("--word2", help="second word for lifting / operator word for kk")
    common.add_argument("--folding", help="folding JSON file for virtual-* statements")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget-nodes", type=int, default=None)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--json", help="also write the JSON report to this file")

    p = argparse.ArgumentParser(prog="kmcrystals", description="Crystal computations for tensor product components.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("decompose", parents=[common], help="decompose V(lambda) x V(mu)")
    c = sub.add_parser("crystal", parents=[common], help="generate B(lambda)")
    c.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    ch = sub.add_parser("check", parents=[common], help="check one statement")
    ch.add_argument("statement", choices=STATEMENTS)
    sc = sub.add_parser("scan", parents=[common], help="exhaustive or seeded scans")
    sc.add_argument("kind", choices=SCANS)
    sc.add_argument("--max-coord", type=int, default=2)
    sc.add_argument("--max-exp", type=int, default=2)
    sc.add_argument("--samples", type=int, default=50)
    return p


COMMANDS = {"decompose": cmd_decompose, "crystal": cmd_crystal, "check": _check, "scan": cmd_scan}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        report, ok, summary = COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except TheoremViolation as exc:
        print(f"THEOREM VIOLATION: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (CrystalError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = report if isinstance(report, str) else json.dumps(report, indent=2)
    print(text)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text + "\n")
    print(summary, file=sys.stderr)
    return EXIT_OK if ok else EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
