"""Command-line experiment runner.

Exit codes: 0 success, 1 precondition/domain violation, 2 parse or config
error. Data goes to stdout (or ``--out``); diagnostics go to stderr. All
randomness derives from ``--seed``; trial ``i`` uses sub-stream ``i``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import analysis, classical, deletion, io, states
from .errors import DomainError, ParameterError, PreconditionError
from .linalg import eigendecompose, tensor, trace_distance, von_neumann_entropy
from .rng import RngStream

AMP_TOL = 1e-9


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParameterError(message)


def _seed(s: str) -> int:
    v = int(s, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _parents():
    seed = argparse.ArgumentParser(add_help=False)
    seed.add_argument("--seed", type=_seed, default=0, help="root seed (default 0)")

    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--family", default=None,
                        help="preset (hv, haar, zero-plus, singleton), inline JSON, or JSON file; default hv = uniform {|H>, |V>}")

    amps = argparse.ArgumentParser(add_help=False)
    r = 1 / np.sqrt(2)
    amps.add_argument("--alpha-re", type=float, default=r)
    amps.add_argument("--alpha-im", type=float, default=0.0)
    amps.add_argument("--beta-re", type=float, default=r)
    amps.add_argument("--beta-im", type=float, default=0.0)

    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--out", default=None, help="write output here instead of stdout")

    register = argparse.ArgumentParser(add_help=False)
    register.add_argument("--register", default="-", help="register text file ('-' = stdin)")
    register.add_argument("--format", choices=["text", "json"], default="text")
    return seed, family, amps, out, register


def build_parser() -> argparse.ArgumentParser:
    seed, family, amps, out, register = _parents()
    p = _Parser(prog="rdeletion", description="Exact simulation of C-not and randomized (R-)deletion.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("truth-table", parents=[out],
                       help="C-not truth table |s1>|s2> -> |s1>|s1 XOR s2>")
    s.add_argument("--format", choices=["text", "json"], default="text")

    s = sub.add_parser("clone", parents=[register, out],
                       help="C-not cloning of a blank register: |b>|0> -> |b>|b>")
    s.add_argument("--r-clone", action="store_true",
                   help="use R-cloning instead (overwrite any copy slot with the original)")

    sub.add_parser("delete", parents=[register, out],
                   help="C-not deletion of identical pairs: |b>|b> -> |b>|0>")

    sub.add_parser("rdelete-classical", parents=[register, seed, out],
                   help="classical R-deletion: copy slot -> fair random bit (p = q = 1/2), empty flag set")

    s = sub.add_parser("rdelete-quantum", parents=[family, seed, amps, out],
                       help="quantum R-deletion of psi psi |A> by the linear extension of "
                            "|HH>|A> -> |H>|S2>|A_H>, |VV>|A> -> |V>|S3>|A_V>")
    s.add_argument("--no-matrix", action="store_true", help="omit the 12x4 isometry matrix")

    sub.add_parser("witness", parents=[family, seed, amps, out],
                   help="linearity-violation witness: || R-deletion(psi psi A) - "
                        "fixed-S1/linear-ancilla hypothesis || for one draw")

    s = sub.add_parser("residual-stats", parents=[family, seed, amps, out],
                       help="distribution of the linearity-violation residual over fresh draws of S1..S5")
    s.add_argument("--trials", type=_positive, default=1000)
    s.add_argument("--threshold", type=float, default=analysis.DEFAULT_THRESHOLD)
    s.add_argument("--format", choices=["json", "csv"], default="json")

    s = sub.add_parser("channel", parents=[family, seed, amps, out],
                       help="sigma-averaged R-deletion channel: CPTP checks and the deleted-slot "
                            "marginal for input psi psi (should equal the family average)")
    s.add_argument("--mode", choices=["exact", "monte-carlo"], default="exact")
    s.add_argument("--samples", type=int, default=1000, help="isometries averaged in monte-carlo mode")
    s.add_argument("--dump-choi", action="store_true", help="include the 48x48 Choi matrix")

    s = sub.add_parser("entropy", parents=[family, out],
                       help="entropy of the randomized slot vs the n-bit randomization bound")
    s.add_argument("--n-slots", type=_positive, default=1)

    s = sub.add_parser("holevo", parents=[family, seed, out],
                       help="Holevo information about psi left in the deleted slot after averaging")
    s.add_argument("--ensemble", choices=["hv", "haar"], default="hv",
                   help="hv = {HH, VV} uniform; haar = uniform over --ensemble-size Haar psi")
    s.add_argument("--ensemble-size", type=_positive, default=10)
    s.add_argument("--mode", choices=["exact", "monte-carlo"], default="exact")
    s.add_argument("--samples", type=int, default=1000)

    sub.add_parser("reuse", parents=[family, out],
                   help="reuse preparation: dominant eigenvector of the randomized slot density matrix")
    return p


# -- helpers ------------------------------------------------------------------

def _amplitudes(args) -> tuple[complex, complex]:
    alpha = complex(args.alpha_re, args.alpha_im)
    beta = complex(args.beta_re, args.beta_im)
    n = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(n - 1.0) > AMP_TOL:
        raise ParameterError(f"|alpha|^2 + |beta|^2 = {n!r} is not 1 within {AMP_TOL}")
    s = np.sqrt(n)
    return alpha / s, beta / s


def _read_register(path: str) -> classical.LabeledRegister:
    text = sys.stdin.read() if path == "-" else _read_file(path)
    return classical.parse_register(text)


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParameterError(f"cannot read {path}: {exc}") from exc


def _register_json(reg: classical.LabeledRegister) -> dict:
    return {"empty_flag": reg.empty_flag, "pairs": [list(p) for p in reg.pairs]}


def _mode(m: str) -> str:
    return "monte_carlo" if m == "monte-carlo" else m


def _register_output(name, args, reg, seed=None) -> str:
    if args.format == "text":
        return classical.format_register(reg)
    return io.dumps(io.report(name, seed, {}, _register_json(reg)))


def _amp_params(alpha, beta) -> dict:
    return {"alpha": io.complex_to_json(alpha), "beta": io.complex_to_json(beta)}


# -- commands -----------------------------------------------------------------

def cmd_truth_table(args) -> str:
    rows = classical.truth_table()
    if args.format == "json":
        return io.dumps(io.report("truth-table", None, {}, {"rows": [[list(a), list(b)] for a, b in rows]}))
    return "".join(f"|{a.first}>|{a.second}> -> |{b.first}>|{b.second}>\n" for a, b in rows)


def cmd_clone(args) -> str:
    reg = _read_register(args.register)
    out = classical.r_clone_register(reg) if args.r_clone else classical.clone_sequence(reg)
    return _register_output("clone", args, out)


def cmd_delete(args) -> str:
    return _register_output("delete", args, classical.cnot_delete_sequence(_read_register(args.register)))


def cmd_rdelete_classical(args) -> str:
    reg = _read_register(args.register)
    out = classical.r_delete_classical(reg, RngStream(args.seed))
    return _register_output("rdelete-classical", args, out, args.seed)


def cmd_rdelete_quantum(args) -> str:
    fam = states.load_family(args.family)
    alpha, beta = _amplitudes(args)
    iso = deletion.build_r_deletion(fam, RngStream(args.seed))
    psi = states.qubit(alpha, beta)
    output = iso.apply(tensor(psi, psi))
    results = {
        "draw": iso.draw.labels(),
        "isometry_defect": iso.isometry_defect(),
        "output": io.matrix_to_json(output.amps),
        "phi": io.matrix_to_json(deletion.phi_state(iso).amps),
    }
    if not args.no_matrix:
        results["isometry"] = io.isometry_to_json(iso)
    params = {"family": fam.descriptor(), **_amp_params(alpha, beta)}
    return io.dumps(io.report("rdelete-quantum", args.seed, params, results))


def cmd_witness(args) -> str:
    fam = states.load_family(args.family)
    alpha, beta = _amplitudes(args)
    rng = RngStream(args.seed)
    iso = deletion.build_r_deletion(fam, rng)
    sigma1 = states.sample_standard_state(fam, rng)
    rep = analysis.eq9_residual(alpha, beta, iso, sigma1, fam)
    results = rep.to_json()
    results["ancilla_linear_hypothesis_error"] = analysis.ancilla_linear_hypothesis_error(iso, alpha, beta)
    params = {"family": fam.descriptor(), **_amp_params(alpha, beta)}
    return io.dumps(io.report("witness", args.seed, params, results))


def cmd_residual_stats(args) -> str:
    fam = states.load_family(args.family)
    alpha, beta = _amplitudes(args)
    summary = analysis.residual_statistics(fam, alpha, beta, args.trials, RngStream(args.seed), args.threshold)
    if args.format == "csv":
        return io.residual_rows_csv(summary)
    params = {"family": fam.descriptor(), **_amp_params(alpha, beta), "trials": args.trials, "threshold": args.threshold}
    return io.dumps(io.report("residual-stats", args.seed, params, summary.to_json()))


def cmd_channel(args) -> str:
    fam = states.load_family(args.family)
    alpha, beta = _amplitudes(args)
    mode = _mode(args.mode)
    ch = deletion.averaged_channel(fam, mode, args.samples if mode == "monte_carlo" else None, RngStream(args.seed))
    psi = states.qubit(alpha, beta)
    marginal = deletion.deleted_slot_marginal(ch.apply_pure(tensor(psi, psi)))
    rho_bar = states.family_average(fam)
    results = {
        "min_choi_eigenvalue": ch.min_choi_eigenvalue(),
        "tp_defect": ch.tp_defect(),
        "cptp": ch.is_cptp(),
        "deleted_slot_marginal": io.matrix_to_json(marginal.data),
        "family_average": io.matrix_to_json(rho_bar.data),
        "trace_distance_to_family_average": trace_distance(marginal, rho_bar),
    }
    if args.dump_choi:
        results["channel"] = io.channel_to_json(ch)
    params = {"family": fam.descriptor(), "mode": mode, **_amp_params(alpha, beta)}
    if mode == "monte_carlo":
        params["samples"] = args.samples
    return io.dumps(io.report("channel", args.seed if mode == "monte_carlo" else None, params, results))


def cmd_entropy(args) -> str:
    fam = states.load_family(args.family)
    rep = analysis.entropy_account(fam, args.n_slots)
    return io.dumps(io.report("entropy", None, {"family": fam.descriptor(), "n_slots": args.n_slots}, rep.to_json()))


def cmd_holevo(args) -> str:
    fam = states.load_family(args.family)
    if args.ensemble == "hv":
        psis = [states.H, states.V]
    else:
        root = RngStream(args.seed)
        psis = [states.haar_state(root.split(i)) for i in range(args.ensemble_size)]
    ensemble = [(1.0 / len(psis), psi) for psi in psis]
    mode = _mode(args.mode)
    # Ensemble states use sub-streams 0..k-1; channel sampling uses a disjoint branch.
    chi = analysis.holevo_leak(fam, ensemble, mode, args.samples if mode == "monte_carlo" else None,
                               RngStream(args.seed, (2**32,)))
    params = {"family": fam.descriptor(), "ensemble": args.ensemble, "mode": mode,
              "ensemble_states": [io.matrix_to_json(p.amps) for p in psis]}
    return io.dumps(io.report("holevo", args.seed, params, {"holevo_bits": chi}))


def cmd_reuse(args) -> str:
    fam = states.load_family(args.family)
    rho_bar = states.family_average(fam)
    prepared = deletion.reuse_prepare(rho_bar)
    results = {
        "family_average": io.matrix_to_json(rho_bar.data),
        "eigenvalues": [lam for lam, _ in eigendecompose(rho_bar)],
        "entropy_bits": von_neumann_entropy(rho_bar),
        "prepared_state": io.matrix_to_json(prepared.amps),
    }
    return io.dumps(io.report("reuse", None, {"family": fam.descriptor()}, results))


COMMANDS = {
    "truth-table": cmd_truth_table,
    "clone": cmd_clone,
    "delete": cmd_delete,
    "rdelete-classical": cmd_rdelete_classical,
    "rdelete-quantum": cmd_rdelete_quantum,
    "witness": cmd_witness,
    "residual-stats": cmd_residual_stats,
    "channel": cmd_channel,
    "entropy": cmd_entropy,
    "holevo": cmd_holevo,
    "reuse": cmd_reuse,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text = COMMANDS[args.command](args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (PreconditionError, DomainError) as exc:
        print(f"rdeletion: {exc}", file=sys.stderr)
        return 1
    except ParameterError as exc:
        print(f"rdeletion: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())
