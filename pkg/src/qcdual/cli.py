"""Command line driver: verification suites and exact simulations.

Subcommands: verify-pq, verify-field, simulate-string, simulate-fermion,
extract-hamiltonian, verify-all.  Verification and extraction write
their report to stdout (and to --output when given); simulation
subcommands write the report to stdout and the trajectory table to
--output.  Exit codes: 0 all contracts pass, 1 contract failure,
2 usage error (including malformed inputs and budget violations).
"""

import argparse
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import automaton, boolean_fermion, canonical_pair, fileio, lattice_field, string_lattice, suites
from .linalg import TWO_PI, exponentiate_hermitian, hermitian_deviation
from .report import CheckRecord, Report, emit_report


@dataclass(frozen=True)
class RunConfig:
    """One resolved invocation; unused parameters stay None."""

    subcommand: str
    window: int | None = None
    sites: int | None = None
    steps: int | None = None
    margin: int | None = None
    tolerance: float | None = None
    chain: int | None = None
    alpha_prime: float | None = None
    seed: int | None = None
    input_path: str | None = None
    output_path: str | None = None
    fmt: str = "human"

    def echo(self):
        """Config fields that determine report content (not presentation)."""
        skip = {"output_path", "fmt"}
        return {
            key: value
            for key, value in asdict(self).items()
            if key not in skip and value is not None
        }


def _report(config, title):
    report = Report(title)
    report.config.update(config.echo())
    return report


def run_verify_pq(config):
    report = _report(config, "canonical pair verification")
    n = config.window
    tol = config.tolerance
    window = canonical_pair.TruncationWindow(n)
    eta = canonical_pair.bounded_conjugate(window)

    dev = hermitian_deviation(eta)
    report.add(CheckRecord("conjugate-hermitian", "conj = conj†", dev, "== 0 exactly", dev == 0.0))

    top = float(np.abs(np.linalg.eigvalsh(eta.data)).max())
    bound = 0.5 + 2.0 / n
    report.add(
        CheckRecord(
            "conjugate-spectrum-bound",
            "max |eig(conj)| <= 1/2 + 2/N",
            top,
            f"<= {bound}",
            top <= bound,
        )
    )

    dev = canonical_pair.conjugate_commutator_deviation(window)
    report.add(
        CheckRecord(
            "conjugate-commutator",
            "[conj, n] = (i/2pi)(1 - |edge><edge|)",
            dev,
            f"<= {tol}",
            dev <= tol,
        )
    )

    lattice = canonical_pair.square_lattice(n)
    dev = max(
        hermitian_deviation(canonical_pair.position_operator(lattice)),
        hermitian_deviation(canonical_pair.momentum_operator(lattice)),
    )
    report.add(CheckRecord("pair-operators-hermitian", "q = q†, p = p†", dev, "== 0 exactly", dev == 0.0))

    defect = canonical_pair.canonical_commutator_defect(lattice, config.margin)
    report.add(
        CheckRecord(
            "pair-commutator-defect",
            "[q,p] - (i/2pi)(1 - |edge><edge|) on the interior box",
            defect.defect,
            "recorded (finite-window truncation diagnostic)",
            True,
            details=f"margin {config.margin}, edge overlap {defect.edge_overlap:.3e}",
        )
    )
    report.payload.update(
        {
            "window": n,
            "margin": config.margin,
            "interior_defect": defect.defect,
            "edge_overlap": defect.edge_overlap,
            "spectrum_max": top,
        }
    )
    return report


def run_verify_field(config):
    report = _report(config, "lattice field verification")
    tol = config.tolerance
    window = canonical_pair.TruncationWindow(config.window)
    dev, notes = lattice_field.verify_lattice_commutators(config.sites, window)

    exact = {
        "same-site": "[a(x), a(x)] = 0",
        "left-distant": "[aL(x), aL(y)] = 0 for ring distance >= 2",
        "right-distant": "[aR(x), aR(y)] = 0 for ring distance >= 2",
        "cross-sector": "[aL(x), aR(y)] = 0",
    }
    for category, law in exact.items():
        report.add(
            CheckRecord(
                f"commutator-{category}",
                law,
                dev[category],
                "== 0 exactly",
                dev[category] == 0.0,
                details=notes.get(category, ""),
            )
        )
    report.add(
        CheckRecord(
            "commutator-left-neighbor",
            "[aL(x), aL(x+1)] = (i/2pi)(1 - edge proj at x+1)",
            dev["left-neighbor"],
            f"<= {tol}",
            dev["left-neighbor"] <= tol,
        )
    )
    report.add(
        CheckRecord(
            "commutator-right-neighbor",
            "[aR(x), aR(x+1)] = -(i/2pi)(1 - edge proj at x)",
            dev["right-neighbor"],
            f"<= {tol}",
            dev["right-neighbor"] <= tol,
        )
    )

    left_ops, right_ops = lattice_field.compose_quantum_movers(config.sites, window)
    herm = max(hermitian_deviation(op) for op in left_ops + right_ops)
    report.add(CheckRecord("quantum-mover-hermiticity", "a_mover = a_mover†", herm, "== 0 exactly", herm == 0.0))

    report.payload.update(
        {
            "sites": config.sites,
            "window": config.window,
            "sector_dimension": lattice_field.sector_dimension(config.sites, window),
        }
    )
    return report


def _default_string_ensemble(sites):
    lattice = string_lattice.WorldSheetLattice(sites, transverse_dims=1)
    zeros = np.zeros((sites, 1), dtype=np.int64)
    return [string_lattice.StringConfiguration(lattice, zeros, zeros)]


def run_simulate_string(config):
    report = _report(config, "string automaton run")
    if config.input_path is not None:
        configs = fileio.load_string_ensemble(config.input_path)
    else:
        configs = _default_string_ensemble(config.sites)

    snapshots = [configs]
    residual_worst = 0
    events = []
    current = configs
    for _ in range(config.steps):
        prev_slices = [(c.bottom, c.top) for c in current]
        stepped = [string_lattice.step(c) for c in current]
        # residual is evaluated on the pure update, before any rewiring
        for (prev, cur), after in zip(prev_slices, stepped):
            residual = string_lattice.wave_residual(prev, cur, after.top)
            residual_worst = max(residual_worst, int(np.abs(residual).max()))
        pairs = string_lattice.scan_exchanges(stepped)
        current, new_events = string_lattice.apply_exchanges(stepped, pairs)
        events.extend(new_events)
        snapshots.append(current)
    report.add(
        CheckRecord(
            "string-equation-residual",
            "X(s,t+1) + X(s,t-1) = X(s+1,t) + X(s-1,t)",
            residual_worst,
            "== 0 exactly",
            residual_worst == 0,
        )
    )

    if events:
        report.add(
            CheckRecord(
                "string-reversibility",
                "step_back(step(X)) = X",
                0.0,
                "vacuous after reconnections",
                True,
                details=f"{len(events)} exchange events; checked on free runs",
            )
        )
    else:
        back = current
        for _ in range(config.steps):
            back = [string_lattice.step_back(c) for c in back]
        restored = all(
            np.array_equal(b.bottom, c.bottom) and np.array_equal(b.top, c.top)
            for b, c in zip(back, configs)
        )
        report.add(
            CheckRecord(
                "string-reversibility",
                "step_back(step(X)) = X",
                0.0 if restored else 1.0,
                "== initial exactly",
                restored,
            )
        )

    if config.output_path is not None:
        fileio.write_string_trajectory(snapshots, config.output_path)
    report.payload.update(
        {
            "strings": len(configs),
            "steps": config.steps,
            "alpha_prime": config.alpha_prime,
            "spacetime_lattice_constant": string_lattice.spacetime_lattice_constant(
                config.alpha_prime
            ),
            "exchange_events": [
                {
                    "step": e.tau,
                    "coordinate": list(e.coordinate),
                    "site_a": list(e.site_a),
                    "site_b": list(e.site_b),
                    "merged": e.merged,
                }
                for e in events
            ],
            "trajectory": config.output_path,
        }
    )
    return report


def run_simulate_fermion(config):
    report = _report(config, "sign automaton run")
    if config.input_path is not None:
        field = fileio.load_boolean_field(config.input_path)
    else:
        ones = np.ones((config.sites, 1), dtype=np.int64)
        field = boolean_fermion.BooleanField(ones, ones)

    try:
        movers = boolean_fermion.split_boolean_movers(field)
    except ValueError:
        movers = None

    snapshots = [field]
    current = field
    for _ in range(config.steps):
        current = boolean_fermion.boolean_step(current)
        snapshots.append(current)

    back = current
    for _ in range(config.steps):
        back = boolean_fermion.boolean_step_back(back)
    restored = bool(
        np.array_equal(back.bottom, field.bottom)
        and np.array_equal(back.top, field.top)
    )
    report.add(
        CheckRecord(
            "boolean-reversibility",
            "boolean step_back(step(s)) = s",
            0.0 if restored else 1.0,
            "== initial exactly",
            restored,
        )
    )

    if movers is None:
        report.add(
            CheckRecord(
                "boolean-factorization-preserved",
                "s = s_L s_R preserved by the update rule",
                0.0,
                "vacuous for non-factorizable input",
                True,
                details="input slices do not factorize into movers",
            )
        )
    else:
        after = boolean_fermion.split_boolean_movers(current)
        preserved = bool(
            np.array_equal(after.left, movers.left)
            and np.array_equal(after.right, movers.right)
            and after.period_sign == movers.period_sign
        )
        report.add(
            CheckRecord(
                "boolean-factorization-preserved",
                "s = s_L s_R preserved by the update rule",
                0.0 if preserved else 1.0,
                "mover factors identical exactly",
                preserved,
            )
        )

    if config.output_path is not None:
        fileio.write_boolean_trajectory(snapshots, config.output_path)
    report.payload.update(
        {
            "sites": field.sites,
            "dims": field.dims,
            "steps": config.steps,
            "factorizable": movers is not None,
            "period_sign": list(movers.period_sign) if movers is not None else None,
            "trajectory": config.output_path,
        }
    )
    return report


def run_extract_hamiltonian(config):
    report = _report(config, "automaton Hamiltonian extraction")
    spec = fileio.load_rule_table(config.input_path)
    op = automaton.build_evolution(spec)
    h = automaton.extract_hamiltonian(op)
    tol = config.tolerance

    dev = hermitian_deviation(h)
    report.add(CheckRecord("hamiltonian-hermitian", "H = H†", dev, "<= 1e-12", dev <= 1e-12))

    u_back = exponentiate_hermitian(h, -1j * spec.dt)
    dev = float(np.abs(u_back.data - op.matrix.data).max())
    report.add(
        CheckRecord(
            "hamiltonian-round-trip",
            "exp(-i H dt) = U",
            dev,
            f"<= {tol}",
            dev <= tol,
        )
    )

    eigenvalues = np.linalg.eigvalsh(h.data)
    top = TWO_PI / spec.dt
    inside = bool(eigenvalues.min() >= -1e-12 and eigenvalues.max() < top)
    report.add(
        CheckRecord(
            "eigenvalue-branch",
            "spec(H) within [0, 2pi/dt)",
            float(eigenvalues.max()),
            f"0 <= ev < {top}",
            inside,
        )
    )

    report.payload.update(
        {
            "state_count": spec.state_count,
            "dt": spec.dt,
            "eigenvalues": [float(v) for v in eigenvalues],
        }
    )
    return report


def run_verify_all(config):
    report = suites.verify_all(
        seed=config.seed,
        window_n=config.window,
        sites=config.sites,
        chain_n=config.chain,
    )
    report.config["subcommand"] = config.subcommand
    return report


_HANDLERS = {
    "verify-pq": run_verify_pq,
    "verify-field": run_verify_field,
    "simulate-string": run_simulate_string,
    "simulate-fermion": run_simulate_fermion,
    "extract-hamiltonian": run_extract_hamiltonian,
    "verify-all": run_verify_all,
}


def _nonnegative_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qcdual",
        description="verification suites and exact simulations for discrete quantum-classical models",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_output(p):
        p.add_argument("--output", help="report destination (stdout is always written)")
        p.add_argument("--format", choices=("human", "machine"), default="human")

    p = sub.add_parser("verify-pq", help="integer canonical pair identities")
    p.add_argument("--window", type=_positive_int, default=16)
    p.add_argument("--margin", type=_positive_int, default=None)
    p.add_argument("--tolerance", type=float, default=1e-12)
    add_output(p)

    p = sub.add_parser("verify-field", help="lattice field mover commutators")
    p.add_argument("--sites", type=_positive_int, default=3)
    p.add_argument("--window", type=_positive_int, default=2)
    p.add_argument("--tolerance", type=float, default=1e-12)
    add_output(p)

    p = sub.add_parser("simulate-string", help="exact string automaton trajectory")
    p.add_argument("--input", help="string ensemble JSON; default is one constant string")
    p.add_argument("--sites", type=_positive_int, default=8)
    p.add_argument("--steps", type=_nonnegative_int, default=100)
    p.add_argument("--alpha-prime", type=float, default=1.0)
    p.add_argument("--output", help="trajectory table destination (TSV)")
    p.add_argument("--format", choices=("human", "machine"), default="human")

    p = sub.add_parser("simulate-fermion", help="exact sign automaton trajectory")
    p.add_argument("--input", help="sign field JSON; default is one constant field")
    p.add_argument("--sites", type=_positive_int, default=8)
    p.add_argument("--steps", type=_nonnegative_int, default=100)
    p.add_argument("--output", help="trajectory table destination (TSV)")
    p.add_argument("--format", choices=("human", "machine"), default="human")

    p = sub.add_parser("extract-hamiltonian", help="Hamiltonian of a bijective rule table")
    p.add_argument("--input", required=True, help="rule table JSON")
    p.add_argument("--tolerance", type=float, default=1e-10)
    add_output(p)

    p = sub.add_parser("verify-all", help="every named invariant check")
    p.add_argument("--seed", type=_nonnegative_int, default=0)
    p.add_argument("--window", type=_positive_int, default=16)
    p.add_argument("--sites", type=_positive_int, default=12)
    p.add_argument("--chain", type=_positive_int, default=6)
    add_output(p)

    return parser


def config_from_args(args):
    window = getattr(args, "window", None)
    margin = getattr(args, "margin", None)
    if args.subcommand == "verify-pq" and margin is None:
        margin = max(1, window // 2)
    return RunConfig(
        subcommand=args.subcommand,
        window=window,
        sites=getattr(args, "sites", None),
        steps=getattr(args, "steps", None),
        margin=margin,
        tolerance=getattr(args, "tolerance", None),
        chain=getattr(args, "chain", None),
        alpha_prime=getattr(args, "alpha_prime", None),
        seed=getattr(args, "seed", None),
        input_path=getattr(args, "input", None),
        output_path=getattr(args, "output", None),
        fmt=args.format,
    )


def run(config):
    """Dispatch one resolved invocation; returns (exit_code, report)."""
    report = _HANDLERS[config.subcommand](config)
    return report.exit_code, report


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    config = config_from_args(args)
    try:
        code, report = run(config)
        sys.stdout.write(report.render(config.fmt))
        # simulate subcommands use --output for the trajectory table
        if config.output_path is not None and config.subcommand not in (
            "simulate-string",
            "simulate-fermion",
        ):
            emit_report(report, config.output_path, config.fmt)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
