"""Command-line interface: capacities, Haar experiments, certification, selftest.

All commands are deterministic functions of their flags; the seed defaults
to a fixed constant, never the clock, and `--workers` changes only the
fan-out, never the numbers.  Exit codes: 0 success/PASS, 1 invariant or
certification failure, 2 usage error.
"""

import argparse
import dataclasses
import json
import math
import sys

import numpy as np

from . import capacity, certify, entropy, gates, haar, tensor
from .streams import DEFAULT_SEED, derive_seed, keyed_stream

_LOWER_BOUND_NOTE = (
    "note: capacities are lower bounds (fixed ancilla dimensions, "
    "finitely many restarts)"
)


def _parse_dims(text: str):
    try:
        a, b = text.lower().split("x")
        dims = int(a), int(b)
    except ValueError:
        raise ValueError(f"expected dims like 2x3, got {text!r}") from None
    if dims[0] < 1 or dims[1] < 1:
        raise ValueError(f"dims must be positive, got {text!r}")
    return dims


def parse_gate(spec: str, seed: int) -> gates.BipartiteGate:
    """Build a gate from a CLI spec like u2x3, swap:2, canonical:a,b,g, haar:2x3."""
    name, _, arg = spec.partition(":")
    name = name.lower()
    if name == "u2x3":
        return gates.build_u2x3()
    if name == "u2x3_dagger":
        return gates.build_u2x3_dagger_oracle()
    if name == "swap":
        return gates.swap_gate(int(arg or 2))
    if name == "canonical":
        parts = [float(x) for x in arg.split(",")] if arg else []
        if len(parts) != 3:
            raise ValueError("canonical gate needs three angles: canonical:a,b,g")
        return gates.canonical_two_qubit(gates.TwoQubitCanonical(*parts))
    if name == "haar":
        da, db = _parse_dims(arg or "2x3")
        return haar.haar_gate(da, db, keyed_stream(seed, "cli-haar-gate", 0))
    raise ValueError(f"unknown gate spec {spec!r}")


def _jsonable(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return [_jsonable(v) for v in obj.tolist()]
        return obj.tolist()
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if dataclasses.is_dataclass(obj):
        return {
            f.name: _jsonable(getattr(obj, f.name))
            for f in dataclasses.fields(obj)
        }
    return obj


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _quantiles(values):
    q = np.quantile(values, [0.0, 0.25, 0.5, 0.75, 1.0])
    return "min {:.6f}  q25 {:.6f}  med {:.6f}  q75 {:.6f}  max {:.6f}".format(*q)


def cmd_capacity(args) -> int:
    gate = parse_gate(args.gate, args.seed)
    anc = _parse_dims(args.anc) if args.anc else (gate.dimA, gate.dimB)
    cfg = capacity.OptimizerConfig(
        restarts=args.restarts,
        max_iters=args.max_iters,
        grad_tol=args.grad_tol,
        seed=args.seed,
    )
    up = capacity.entangling_power(gate, anc=anc, cfg=cfg)
    down = capacity.disentangling_power(gate, anc=anc, cfg=cfg)
    bound = 2 * math.log2(min(gate.dimA, gate.dimB)) + 1e-6
    if not (0 <= up.value <= bound and 0 <= down.value <= bound):
        print("internal error: capacity outside [0, 2 log2 min(A,B)]", file=sys.stderr)
        return 1
    if args.format == "json":
        payload = {
            "gate": args.gate,
            "dims": [gate.dimA, gate.dimB],
            "ancillas": list(anc),
            "seed": args.seed,
            "e_up": _jsonable(up),
            "e_down": _jsonable(down),
            "lower_bound_note": _LOWER_BOUND_NOTE,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [
            f"gate {args.gate} on {gate.dimA}x{gate.dimB}, "
            f"ancillas {anc[0]}x{anc[1]}, seed {args.seed}",
            f"E_up   = {up.value:.9f} ebits  (converged={up.converged}, "
            f"iterations={up.iterations_used})",
            f"  restarts: {_quantiles(up.per_restart_values)}",
            f"E_down = {down.value:.9f} ebits  (converged={down.converged}, "
            f"iterations={down.iterations_used})",
            f"  restarts: {_quantiles(down.per_restart_values)}",
            _LOWER_BOUND_NOTE,
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def format_scatter_csv(records) -> str:
    lines = ["index,e_up,e_down"]
    for r in records:
        lines.append(f"{r.index},{r.e_up:.9g},{r.e_down:.9g}")
    return "\n".join(lines) + "\n"


def cmd_scatter(args) -> int:
    da, db = _parse_dims(args.dims)
    cfg = dataclasses.replace(
        haar.SCATTER_OPTIMIZER, restarts=args.restarts, max_iters=args.max_iters
    )
    records = haar.scatter_experiment(
        da, db, args.samples, cfg=cfg, seed=args.seed, workers=args.workers
    )
    csv_text = format_scatter_csv(records)
    try:
        _emit(csv_text, args.out)
    except OSError as exc:
        print(f"cannot write {args.out!r}: {exc}", file=sys.stderr)
        return 2
    ups = np.array([r.e_up for r in records])
    downs = np.array([r.e_down for r in records])
    summary = (
        f"n={len(records)}  max_gap={haar.max_gap(records):.6f}  "
        f"mean_e_up={ups.mean():.6f}  mean_e_down={downs.mean():.6f}"
    )
    print(summary, file=sys.stderr if not args.out else sys.stdout)
    return 0


def cmd_purity(args) -> int:
    da, db = _parse_dims(args.dims)
    report = haar.mean_purity_experiment(da, db, args.samples, args.seed)
    if args.format == "json":
        payload = _jsonable(report)
        payload["z_score"] = report.z_score
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(
            f"dims {da}x{db}, samples {report.samples}\n"
            f"mean purity      {report.mean_purity:.9f}\n"
            f"predicted purity {report.predicted_purity:.9f}\n"
            f"std error        {report.std_error:.3e}\n"
            f"z-score          {report.z_score:+.3f}\n",
            args.out,
        )
    return 0 if abs(report.z_score) <= 4.0 else 1


def cmd_certify(args) -> int:
    try:
        report = certify.forced_constraint_check()
    except RuntimeError as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return 1
    cfg = capacity.OptimizerConfig(restarts=args.restarts, seed=args.seed)
    found = certify.infeasibility_search(cfg)
    two_thirds_ok = abs(report.overlap_00_11 - 2.0 / 3.0) <= 1e-10
    floor_ok = found.residual > 0.05
    verdict = "PASS" if (two_thirds_ok and floor_ok) else "FAIL"
    if args.format == "json":
        payload = {
            "forced_constraints": _jsonable(report),
            "minimum": _jsonable(found),
            "verdict": verdict,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [
            "forced-constraint chain (all within 1e-10):",
            f"  norms squared      {report.norms_squared[0]:.9f} "
            f"{report.norms_squared[1]:.9f} {report.norms_squared[2]:.9f} "
            "(expected 1/3 each)",
            f"  <t1|t2>            {report.overlap_t1_t2:.9f}  (expected omega/3)",
            f"  <t0|t1>            {report.overlap_t0_t1:.9f}  (expected -omega/6)",
            f"  <t0|t2>            {report.overlap_t0_t2:.9f}  (expected -omega^2/6)",
            f"  <Phi00|Phi11>      {report.overlap_00_11.real:.6f}  (expected 2/3)",
            f"minimum Gram residual over {args.restarts} restarts: "
            f"{found.residual:.6f}  (threshold 0.05)",
            f"certification: {verdict} — the gate cannot disentangle maximally",
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if verdict == "PASS" else 1


def _selftest_checks(seed: int, quick: bool):
    """The paper-reported values, each as (name, callable -> (ok, detail))."""
    u23 = gates.build_u2x3()
    cfg = lambda **kw: capacity.OptimizerConfig(seed=seed, **kw)  # noqa: E731

    def two_ebit_witness():
        state = gates.phi1_in()
        before = entropy.entanglement(state)
        after = entropy.entanglement(tensor.apply_gate(state, u23))
        return (
            abs(before) <= 1e-9 and abs(after - 2.0) <= 1e-9,
            f"E_in={before:.2e} E_out={after:.12f}",
        )

    def swap_no_ancilla():
        swap = gates.swap_gate(2)
        rng = keyed_stream(seed, "selftest-swap", 0)
        worst = 0.0
        for _ in range(20):
            amps = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            bmps = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            amps /= np.linalg.norm(amps)
            bmps /= np.linalg.norm(bmps)
            psi = tensor.product_input(amps, bmps, (1, 2, 2, 1))
            worst = max(worst, abs(capacity.delta_entanglement(swap, psi)))
        return worst <= 1e-9, f"max |dE| = {worst:.2e}"

    def swap_with_ancilla():
        swap = gates.swap_gate(2)
        gain = capacity.delta_entanglement(swap, haar.canonical_input(2, 2))
        return abs(gain - 2.0) <= 1e-9, f"dE = {gain:.12f}"

    def swap_capacities():
        est = capacity.entangling_power(gates.swap_gate(2), cfg=cfg(restarts=16))
        dst = capacity.disentangling_power(gates.swap_gate(2), cfg=cfg(restarts=16))
        return (
            est.value >= 2 - 1e-6 and dst.value >= 2 - 1e-6,
            f"e_up={est.value:.9f} e_down={dst.value:.9f}",
        )

    def u2x3_entangling():
        est = capacity.entangling_power(u23, cfg=cfg(restarts=16 if quick else 64))
        return est.value >= 2 - 1e-6, f"e_up={est.value:.9f}"

    def u2x3_disentangling():
        est = capacity.disentangling_power(
            u23, cfg=cfg(restarts=32 if quick else 256)
        )
        return 1.92 <= est.value <= 1.96, f"e_down={est.value:.6f} (2-x={2-est.value:.4f})"

    def product_ansatz():
        r = 16 if quick else 64
        direct = capacity.entangling_power_product_ansatz(u23, cfg=cfg(restarts=r))
        inverse = capacity.entangling_power_product_ansatz(
            u23.dagger(), cfg=cfg(restarts=r)
        )
        return (
            direct.value >= 2 - 1e-6 and inverse.value < 2 - 0.03,
            f"ansatz(U)={direct.value:.9f} ansatz(U^-1)={inverse.value:.6f}",
        )

    def two_qubit_symmetry():
        rng = keyed_stream(seed, "selftest-canonical", 0)
        n = 1 if quick else 3
        worst = 0.0
        for i in range(n):
            gate = gates.canonical_two_qubit(
                gates.TwoQubitCanonical(*rng.uniform(-np.pi, np.pi, 3))
            )
            up = capacity.entangling_power(gate, cfg=cfg(restarts=24, max_iters=3000))
            down = capacity.disentangling_power(
                gate,
                cfg=capacity.OptimizerConfig(
                    restarts=24,
                    max_iters=3000,
                    seed=derive_seed(seed, "selftest-canonical-down", i),
                ),
            )
            worst = max(worst, abs(up.value - down.value))
        return worst <= 2e-3, f"max |e_up - e_down| = {worst:.2e}"

    def mean_purity():
        n = 20000 if quick else 100000
        zs = []
        for da, db in ((2, 2), (2, 3), (3, 3)):
            zs.append(haar.mean_purity_experiment(da, db, n, seed).z_score)
        return all(abs(z) <= 4 for z in zs), "z = " + " ".join(f"{z:+.2f}" for z in zs)

    def entanglement_bound():
        b23 = haar.expected_entanglement_bound(2, 3)
        b2100 = haar.expected_entanglement_bound(2, 100)
        return (
            abs(b23 - 1.3587) < 1e-4 and abs(b2100 - 1.99942) < 1e-5,
            f"bound(2,3)={b23:.6f} bound(2,100)={b2100:.6f}",
        )

    def certification():
        report = certify.forced_constraint_check()
        found = certify.infeasibility_search(cfg(restarts=16 if quick else 64))
        return (
            abs(report.overlap_00_11 - 2 / 3) <= 1e-10 and found.residual > 0.05,
            f"<Phi00|Phi11>={report.overlap_00_11.real:.9f} "
            f"min residual={found.residual:.4f}",
        )

    def scatter_2x3():
        n = 40 if quick else 1000
        records = haar.scatter_experiment(2, 3, n, seed=seed)
        gap = haar.max_gap(records)
        ups = np.array([r.e_up for r in records])
        sem = ups.std(ddof=1) / np.sqrt(len(ups))
        bound = haar.expected_entanglement_bound(2, 3)
        return (
            gap <= 0.14 and ups.mean() >= bound - 4 * sem,
            f"max gap={gap:.4f} mean e_up={ups.mean():.4f} bound={bound:.4f}",
        )

    def scatter_2x2():
        n = 24 if quick else 200
        records = haar.scatter_experiment(2, 2, n, seed=seed)
        worst = max(abs(r.e_up - r.e_down) for r in records)
        return worst <= 5e-3, f"max |gap| = {worst:.2e}"

    return [
        ("two-ebit witness", two_ebit_witness),
        ("swap: no increase without ancillas", swap_no_ancilla),
        ("swap: two ebits with ancillas", swap_with_ancilla),
        ("swap capacities reach the maximum", swap_capacities),
        ("2x3 gate entangles maximally", u2x3_entangling),
        ("2x3 gate disentangling gap ~0.06", u2x3_disentangling),
        ("product ansatz: lossless forward, gapped inverse", product_ansatz),
        ("two-qubit gates: equal capacities", two_qubit_symmetry),
        ("Haar mean purity formula", mean_purity),
        ("expected-entanglement bound values", entanglement_bound),
        ("certification chain and residual floor", certification),
        ("2x3 scatter envelope", scatter_2x3),
        ("2x2 scatter symmetry", scatter_2x2),
    ]


def cmd_selftest(args) -> int:
    failures = 0
    for name, check in _selftest_checks(args.seed, args.quick):
        try:
            ok, detail = check()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"raised {exc!r}"
        print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        failures += 0 if ok else 1
    print(f"selftest: {failures} failure(s)")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gatecap",
        description="Entangling and disentangling power of bipartite gates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, samples_default=None):
        p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                       help=f"stream seed (default 0x{DEFAULT_SEED:X})")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json", "text"), default="text")
        p.add_argument("--workers", type=int, default=1,
                       help="parallel fan-out; never affects results")
        if samples_default is not None:
            p.add_argument("--samples", type=int, default=samples_default)

    p = sub.add_parser("capacity", help="estimate E_up and E_down of one gate")
    p.add_argument("--gate", required=True,
                   help="u2x3 | u2x3_dagger | swap:d | canonical:a,b,g | haar:AxB")
    p.add_argument("--anc", default=None, help="ancilla dims like 2x3 (default A,B)")
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--max-iters", type=int, default=10000)
    p.add_argument("--grad-tol", type=float, default=1e-8)
    common(p)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("scatter", help="capacity scatter over Haar-random gates")
    p.add_argument("--dims", required=True, help="system dims like 2x3")
    p.add_argument("--restarts", type=int, default=haar.SCATTER_OPTIMIZER.restarts)
    p.add_argument("--max-iters", type=int, default=haar.SCATTER_OPTIMIZER.max_iters)
    common(p, samples_default=1000)
    p.set_defaults(func=cmd_scatter)

    p = sub.add_parser("purity", help="Monte Carlo mean output purity vs prediction")
    p.add_argument("--dims", required=True, help="system dims like 2x3")
    common(p, samples_default=100000)
    p.set_defaults(func=cmd_purity)

    p = sub.add_parser("certify", help="orthonormality-defect certificate for u2x3")
    p.add_argument("--restarts", type=int, default=64)
    common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("selftest", help="re-check every paper-reported value")
    p.add_argument("--quick", action="store_true",
                   help="downscale the expensive checks (smoke mode)")
    common(p)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
