"""Batch front door: analyze catalog or user groups, emit certificates and tables.

Subcommands
-----------
group-analyze   class data and the Poincare table k -> dim H^{2k} = |Gamma_{2k}|
cohomology      per-element contraction certificates, witness, dimension window
sra             rewriting-system checks: nf, confluence, berezin, hbar0, specialize

Exit codes: 0 ok, 2 bad input, 3 cap exceeded, 4 confluence failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import koszul, sra
from .cyclo import Cyclotomic
from .smash import UnknownClassKey, build_C_lambda, lambda_weights, pi_matrix
from .sympgroup import (OrderExceedsCap, catalog, group_from_json)
from .weyl import WeylElement

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_CAP = 3
EXIT_CONFLUENCE = 4


@dataclass
class JobSpec:
    command: str
    group: str
    lam: str = ""
    degree_cap: int = 6
    seed: int = 1
    fmt: str = "json"
    out: str = ""
    element: int = -1
    checks: tuple = ()
    corrupt_kappa: bool = False
    roundtrip: bool = False
    samples: int = 3
    extra: dict = field(default_factory=dict)


def load_group(spec):
    name = spec.group
    if name.endswith(".json") or "/" in name:
        data = json.loads(Path(name).read_text())
        return group_from_json(data)
    return catalog(name)


def parse_lambda(group, text):
    """Parse "c0=1,c2=1/2" (class names c<index>) or "all=<value>"."""
    gamma2 = group.gamma_partition().get(1, ())
    if not text:
        return {}
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ValueError(f"bad lambda assignment {part!r}")
        key, val = part.split("=", 1)
        val = Fraction(val)
        if key == "all":
            for idx in gamma2:
                out[idx] = val
        else:
            if not key.startswith("c"):
                raise ValueError(f"class names look like c<index>, got {key!r}")
            out[int(key[1:])] = val
    return lambda_weights(group, out)


def cmd_group_analyze(spec):
    G = load_group(spec)
    classes, partition = G.classes, G.gamma_partition()
    payload = {
        "command": "group-analyze",
        "group": G.label or spec.group,
        "n": G.n,
        "order": G.order,
        "classes": [
            {
                "name": f"c{idx}",
                "representative": cls.rep,
                "size": len(cls.members),
                "centralizer_order": len(cls.centralizer),
                "k": cls.k,
            }
            for idx, cls in enumerate(classes)
        ],
        "gamma_partition": {str(2 * k): [f"c{i}" for i in v]
                            for k, v in partition.items()},
        "poincare_table": _poincare_table(G, partition),
    }
    return payload, EXIT_OK


def _poincare_table(G, partition):
    top = 2 * G.n
    table = {}
    for k in range(0, 2 * top + 1):
        if k % 2:
            table[str(k)] = 0
        else:
            table[str(k)] = len(partition.get(k // 2, ()))
    return table


def cmd_cohomology(spec):
    G = load_group(spec)
    rng = random.Random(spec.seed)
    targets = [spec.element] if spec.element >= 0 else [c.rep for c in G.classes]
    reports = []
    for g in targets:
        if not 0 <= g < G.order:
            raise ValueError(f"element index {g} out of range")
        inv = G.invariants(g)
        omega = koszul.omega_cochain(inv)
        per_degree = []
        for k in range(0, 2 * G.n + 1):
            certs = []
            if k == 2 * inv.k_sigma:
                cert = koszul.contract(omega)
                certs.append(koszul.certificate_to_json(
                    cert, omega, sigma_ref={"group": G.label or spec.group, "element": g}))
            for _ in range(spec.samples):
                if k == 0:
                    continue
                b0 = koszul.random_cochain(inv, k - 1, rng, max_degree=3, terms=2)
                c = koszul.delta_prime(b0)
                if c.is_zero():
                    continue
                cert = koszul.contract(c)
                certs.append(koszul.certificate_to_json(
                    cert, c, sigma_ref={"group": G.label or spec.group, "element": g}))
            per_degree.append({
                "k": k,
                "certificates": certs,
                "all_verified": all(c["verified"] for c in certs),
                "coboundary_s_all_zero": all(
                    c["s"] is None or c["s"]["coeff"] in ("0",)
                    for c in certs[1:] if k == 2 * inv.k_sigma) or k != 2 * inv.k_sigma,
            })
        table = koszul.truncated_cohomology_dims(inv, range(0, 2 * G.n + 1),
                                                 spec.degree_cap)
        report = {
            "element": g,
            "k_sigma": inv.k_sigma,
            "sigma_order": inv.order,
            "omega": koszul.cochain_to_json(omega),
            "noncoboundary_witness_omega": koszul.noncoboundary_witness(omega),
            "degrees": per_degree,
            "window_dims": {str(k): v for k, v in table["dims"].items()},
            "window_dmax": table["dmax"],
        }
        if spec.roundtrip:
            report["roundtrip_verified"] = _roundtrip_all(report, inv)
        reports.append(report)
    payload = {
        "command": "cohomology",
        "group": G.label or spec.group,
        "order": G.order,
        "seed": spec.seed,
        "elements": reports,
    }
    return payload, EXIT_OK


def _roundtrip_all(report, inv):
    blob = json.loads(json.dumps(report))
    for deg in blob["degrees"]:
        for cert_json in deg["certificates"]:
            cert, _ = koszul.certificate_from_json(cert_json, inv)
            if not cert.verified:
                return False
    return True


def cmd_sra(spec):
    G = load_group(spec)
    weights = parse_lambda(G, spec.lam)
    system = sra.RewriteSystem(G, weights)
    if spec.corrupt_kappa:
        system = system.with_corrupted_entry()
    rng = random.Random(spec.seed)
    checks = spec.checks or ("nf", "confluence", "berezin", "hbar0", "specialize")
    payload = {
        "command": "sra",
        "group": G.label or spec.group,
        "order": G.order,
        "lambda": {f"c{idx}": str(v.to_fraction()) if v.is_rational() else v.to_text()
                   for idx, v in weights.items()},
        "corrupted": system.corrupted,
        "seed": spec.seed,
        "checks": {},
    }
    exit_code = EXIT_OK

    nonzero = {idx: lam for idx, lam in weights.items() if not lam.is_zero()}
    nontrivial = []
    for idx, lam in sorted(nonzero.items()):
        invg = G.invariants(G.classes[idx].rep)
        witness = koszul.noncoboundary_witness(koszul.omega_cochain(invg).scale(lam))
        nontrivial.append({"class": f"c{idx}", "witness": witness})
    c_lambda = build_C_lambda(G, weights)
    payload["cocycle"] = {
        "zero": c_lambda.is_zero(),
        "per_class_witness": nontrivial,
        "nontrivial": bool(nonzero) and all(w["witness"] for w in nontrivial),
        "invariant": all(pi_matrix(gen, c_lambda) == c_lambda for gen in G.generators)
        if not c_lambda.is_zero() else True,
    }

    if "nf" in checks:
        ok = True
        n = G.n
        for i in range(2 * n):
            for j in range(2 * n):
                if i == j:
                    continue
                x = sra.SRAElement.generator(G, i)
                y = sra.SRAElement.generator(G, j)
                got = sra.mul(x, y, system) - sra.mul(y, x, system)
                expect = _relation_rhs(G, weights, i, j)
                if got != expect:
                    ok = False
        payload["checks"]["nf"] = {"relations_hold": ok}
        if not ok and not system.corrupted:
            exit_code = max(exit_code, EXIT_BAD_INPUT)
    if "confluence" in checks:
        rep = sra.confluence_check(system)
        payload["checks"]["confluence"] = {
            "pairs": rep["pairs"],
            "all_resolve": rep["all_resolve"],
        }
        if not rep["all_resolve"]:
            exit_code = EXIT_CONFLUENCE
        payload["checks"]["pbw_counts"] = {
            "degree": spec.degree_cap,
            "count": sra.normal_monomial_count(G, spec.degree_cap),
            "lambda_zero_count": sra.normal_monomial_count(G, spec.degree_cap),
        }
    if "berezin" in checks:
        failures = 0
        trials = 0
        for _ in range(spec.samples * 2):
            k = rng.randrange(1, 3)
            a = _random_monomial(G, rng, max_degree=2)
            args = [_random_monomial(G, rng, max_degree=1) for _ in range(k)]
            diff = sra.berezin_expand(a, args, system, cap=spec.degree_cap)
            trials += 1
            if not diff.is_zero():
                failures += 1
        payload["checks"]["berezin"] = {"trials": trials, "failures": failures}
    if "hbar0" in checks:
        repz = sra.hbar_zero_compare(system, degree_cap=min(spec.degree_cap, 4))
        payload["checks"]["hbar0"] = {
            "pairs_checked": repz["pairs_checked"], "ok": repz["ok"],
        }
    if "specialize" in checks:
        ok = True
        for value in (0, 1, -2):
            for _ in range(spec.samples):
                letters = tuple(("v", rng.randrange(2 * G.n)) for _ in range(3))
                lhs = sra.specialize_hbar(sra.normal_form(sra.word(letters), system), value)
                rhs = sra.normal_form(sra.word(letters), system.specialized(value))
                if lhs != rhs:
                    ok = False
        payload["checks"]["specialize"] = {"commutes": ok}
    return payload, exit_code


def _relation_rhs(G, weights, i, j):
    from .weyl import SymplecticForm
    form = SymplecticForm(G.n)
    zero_exps = (0,) * (2 * G.n)
    terms = {}
    w0 = form.on_basis(i, j)
    if not w0.is_zero():
        terms[(zero_exps, G.identity_index)] = sra.HbarPoly.const(w0)
    for idx, lam in weights.items():
        if lam.is_zero():
            continue
        for g in G.classes[idx].members:
            wg = G.invariants(g).omega.on_basis((i, j))
            if wg.is_zero():
                continue
            key = (zero_exps, g)
            prev = terms.get(key, sra.HbarPoly())
            terms[key] = prev + sra.HbarPoly.hbar(lam * wg)
    return sra.SRAElement(G, terms)


def _random_monomial(G, rng, max_degree=2):
    exps = [0] * (2 * G.n)
    for _ in range(rng.randrange(max_degree + 1)):
        exps[rng.randrange(2 * G.n)] += 1
    g = rng.randrange(G.order)
    return sra.SRAElement.monomial(G, exps, g)


# -- output --------------------------------------------------------------------------


def emit(payload, spec):
    if spec.fmt == "csv":
        if spec.command != "group-analyze":
            raise ValueError("csv output is only defined for the Poincare table")
        lines = ["k,dim"]
        for k, dim in sorted(payload["poincare_table"].items(), key=lambda t: int(t[0])):
            lines.append(f"{k},{dim}")
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if spec.out:
        Path(spec.out).write_text(text)
    else:
        sys.stdout.write(text)


def build_parser():
    parser = argparse.ArgumentParser(prog="sympref")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("group-analyze", "cohomology", "sra"):
        sp = sub.add_parser(name)
        sp.add_argument("--group", required=True,
                        help="catalog name (e.g. Z4_sp2) or path to a JSON description")
        sp.add_argument("--lambda", dest="lam", default="",
                        help="class weights, e.g. 'c1=1,c2=1/2' or 'all=1'")
        sp.add_argument("--degree-cap", type=int, default=6)
        sp.add_argument("--seed", type=int, default=1)
        sp.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
        sp.add_argument("--out", default="")
        if name == "cohomology":
            sp.add_argument("--element", type=int, default=-1,
                            help="element index; default: every class representative")
            sp.add_argument("--samples", type=int, default=3)
            sp.add_argument("--roundtrip", action="store_true",
                            help="re-verify every certificate after a JSON round trip")
        if name == "sra":
            sp.add_argument("--checks", default="",
                            help="comma list from nf,confluence,berezin,hbar0,specialize")
            sp.add_argument("--samples", type=int, default=3)
            sp.add_argument("--corrupt-kappa", action="store_true",
                            help="negative control: perturb one table entry")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    spec = JobSpec(
        command=args.command,
        group=args.group,
        lam=args.lam,
        degree_cap=args.degree_cap,
        seed=args.seed,
        fmt=args.fmt,
        out=args.out,
        element=getattr(args, "element", -1),
        checks=tuple(c for c in getattr(args, "checks", "").split(",") if c),
        corrupt_kappa=getattr(args, "corrupt_kappa", False),
        roundtrip=getattr(args, "roundtrip", False),
        samples=getattr(args, "samples", 3),
    )
    try:
        if spec.command == "group-analyze":
            payload, code = cmd_group_analyze(spec)
        elif spec.command == "cohomology":
            payload, code = cmd_cohomology(spec)
        else:
            payload, code = cmd_sra(spec)
        emit(payload, spec)
        return code
    except (OrderExceedsCap, sra.CapExceeded, koszul.DegreeCapExceeded,
            koszul.WindowTooSmall) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (KeyError, ValueError, OSError, UnknownClassKey, json.JSONDecodeError) as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
