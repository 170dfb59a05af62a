"""Command line entry point.

Subcommands:

* ``qft1d run --config <file> | --preset <name> [--out <dir>]``
* ``qft1d verify-algebra``
* ``qft1d selftest``

Exit codes: 0 success, 1 configuration error, 2 numerical guard
violation, 3 self-test failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .errors import ConfigurationError, GuardBandError
from .fock import (FockSpace, build_nu_dagger, build_psi_dagger,
                   check_charge_raising, check_number_raising)
from .scenarios import PRESETS, parse_config, preset_config, run_scenario
from .selftest import run_selftest


def _cmd_run(args) -> int:
    try:
        if args.preset:
            config = preset_config(args.preset)
        elif args.config:
            config = parse_config(Path(args.config).read_text())
        else:
            print("error: provide --config or --preset", file=sys.stderr)
            return 1
        manifest = run_scenario(config, out_dir=args.out)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except GuardBandError as exc:
        print(f"numerical guard violation: {exc}", file=sys.stderr)
        return 2
    out = args.out or config.output_dir
    n_files = len(manifest.data["files"])
    print(f"wrote {n_files} density files and manifest.json to {out}")
    return 0


def _cmd_verify_algebra(_args) -> int:
    rng = np.random.default_rng(7)
    ok = True
    cases = [("fermi", n, 1) for n in (1, 2, 3)] + [("bose", 2, 3)]
    for stats, n_modes, max_occ in cases:
        space = FockSpace(n_modes=n_modes, statistics=stats, max_occupancy=max_occ)
        a = rng.standard_normal(n_modes) + 1j * rng.standard_normal(n_modes)
        b = rng.standard_normal(n_modes) + 1j * rng.standard_normal(n_modes)
        rep_n = check_number_raising(space, build_nu_dagger(space, a, b))
        rep_q = check_charge_raising(space, build_psi_dagger(space, a, b))
        label = f"{stats} n_modes={n_modes} max_occ={max_occ} dim={space.dim}"
        print(f"number raising  {label}: {rep_n}")
        print(f"charge raising  {label}: {rep_q}")
        ok &= rep_n.ok and rep_q.ok
    print("algebra verification:", "PASS" if ok else "FAIL")
    return 0 if ok else 3


def _cmd_selftest(_args) -> int:
    return 0 if run_selftest(verbose=True) else 3


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qft1d",
        description="1+1D field simulator for compact-support relativistic wave packets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a scenario and export densities")
    p_run.add_argument("--config", help="path to an INI config file")
    p_run.add_argument("--preset", choices=sorted(PRESETS),
                       help="use a bundled scenario preset")
    p_run.add_argument("--out", help="output directory (overrides the config)")
    p_run.set_defaults(func=_cmd_run)

    p_alg = sub.add_parser("verify-algebra",
                           help="check the number/charge raising identities exactly")
    p_alg.set_defaults(func=_cmd_verify_algebra)

    p_self = sub.add_parser("selftest", help="run the oracle suites")
    p_self.set_defaults(func=_cmd_selftest)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
