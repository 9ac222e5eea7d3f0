## adder-ud
## app.py

import argparse
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence

import pandas as pd

from bounds import smallest_improving_n, theorem1_params, theta_profile, upper_bound
from catalog import CATALOG, catalog_get, catalog_names, run_table1
from code_core import CodeSystem, normalize_step1, sum_rate_seed, verify_ud
from code_file import load_code_file, serialize_code_file, write_code_file
from config import Config, get_config
from errors import (
    AdderCodeError,
    CodeFormatError,
    EmptyConstituentError,
    InvalidPermutationError,
    InvalidSizesError,
    UnknownCatalogEntryError,
)
from glue_construct import (
    GlueParams,
    improved_sizes,
    materialize_small,
    theorem_construction,
    weight_separation,
)
from rate_search import SearchConfig, search, search_normalizations, symmetry_groups
from seed_discovery import DiscoveryFailure, DiscoverySpec, tabu_search
from utils.logger import configure_logging, logger
from utils.numeric import format_fraction, round_up, truncate
from weight_spectrum import format_distribution, moments, power, spectrum

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

#########################################################################################

def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


class AdderCodeApp:
    def __init__(self, config: Optional[Config] = None):
        self.config = config or get_config()
        self.parser = self.setup_commands()

    #####################################################################################

    def setup_commands(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(
            prog="adder-ud",
            description="Uniquely decodable codes for the T-user binary adder channel",
        )
        parser.add_argument("--precision", type=int, default=None,
                            help="decimals printed for rates (default from ADDER_UD_RATE_PRECISION)")
        parser.add_argument("--log-level", default=None, help="console log level")
        sub = parser.add_subparsers(dest="command", required=True)

        def with_code(p):
            p.add_argument("code", help=f"catalog name ({', '.join(catalog_names())}) or code file path")
            return p

        p = with_code(sub.add_parser("verify", help="brute-force UD check"))
        p.set_defaults(handler=self.cmd_verify)

        p = with_code(sub.add_parser("normalize", help="Step-1 equivalence normalization"))
        p.add_argument("--all", action="store_true", help="list every optimal candidate")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.set_defaults(handler=self.cmd_normalize)

        p = with_code(sub.add_parser("spectrum", help="weight distributions of the n-fold powers"))
        p.add_argument("--n", type=int, default=1)
        p.set_defaults(handler=self.cmd_spectrum)

        p = with_code(sub.add_parser("moments", help="mean, variance and rho3 per constituent"))
        p.add_argument("--n", type=int, default=1)
        p.set_defaults(handler=self.cmd_moments)

        p = with_code(sub.add_parser("improve", help="glued construction sizes at given n and g"))
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--g", type=_int_list, required=True, help="g_2,...,g_T")
        p.add_argument("--as-given", action="store_true", help="skip Step-1 normalization")
        p.add_argument("--materialize", metavar="PATH", help="write the glued system (tiny n only)")
        p.set_defaults(handler=self.cmd_improve)

        p = with_code(sub.add_parser("search", help="exhaustive search over n and g"))
        p.add_argument("--nmax", type=int, required=True)
        p.add_argument("--gmax", type=int, default=None, help="fixed cap for every g (default: auto)")
        p.add_argument("--as-given", action="store_true", help="search the system exactly as given")
        p.add_argument("--groups", default=None, help="tied indices, e.g. '2,3;4' (needs --as-given)")
        p.add_argument("--pin", type=_int_list, default=None, help="indices fixed to g=0 (needs --as-given)")
        p.set_defaults(handler=self.cmd_search)

        p = sub.add_parser("bounds", help="entropy upper bound on the sum rate")
        p.add_argument("--T", dest="users", type=int, required=True)
        p.set_defaults(handler=self.cmd_bounds)

        p = with_code(sub.add_parser("analyze", help="existence-proof constants and guaranteed rates"))
        p.add_argument("--n", type=_int_list, default=None, help="n values for the theta profile")
        p.set_defaults(handler=self.cmd_analyze)

        p = sub.add_parser("discover", help="tabu search for a UD system of fixed shape")
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--sizes", type=_int_list, required=True)
        p.add_argument("--budget", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tenure", type=int, default=None)
        p.add_argument("--out", metavar="PATH", help="write the found system here")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.set_defaults(handler=self.cmd_discover)

        p = sub.add_parser("catalog", help="list or print embedded codes")
        p.add_argument("name", nargs="?")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.set_defaults(handler=self.cmd_catalog)

        p = sub.add_parser("table1", help="recompute the bounds table for T = 2..8")
        p.set_defaults(handler=self.cmd_table1)
        return parser

    #####################################################################################

    def _load(self, source: str) -> CodeSystem:
        if source in CATALOG:
            return catalog_get(source).system
        if not Path(source).exists():
            raise UnknownCatalogEntryError(source, catalog_names())
        return load_code_file(source)

    def _rate(self, value) -> str:
        return truncate(value, self.precision)

    def _normalized(self, system: CodeSystem, as_given: bool) -> CodeSystem:
        if as_given:
            return system
        first = normalize_step1(system, self.config.normalize_max_dim, self.config.normalize_cap)[0]
        if first.mask or first.order != tuple(range(system.T)):
            print(f"normalized with mask {first.mask}, order {[i + 1 for i in first.order]}")
        return first.system

    def cmd_verify(self, args) -> int:
        system = self._load(args.code)
        report = verify_ud(system, self.config.tuple_guard)
        print(f"code: {system.name}  T={system.T}  d={system.d}  sizes={system.sizes}")
        print(f"tuples: {report.total_tuples}")
        print(f"distinct sums: {report.distinct_sums}")
        print(f"uniquely decodable: {'yes' if report.is_ud else 'no'}")
        if report.witness:
            w = report.witness
            print(f"witness: {list(w.first)} and {list(w.second)} both sum to {list(w.sum_vector)}")
            return EXIT_FAILURE
        print(f"sum rate: {self._rate(sum_rate_seed(system))}")
        return EXIT_OK

    def cmd_normalize(self, args) -> int:
        system = self._load(args.code)
        result = normalize_step1(system, self.config.normalize_max_dim, self.config.normalize_cap)
        print(f"minimum average weight: {format_fraction(result.min_average)}")
        print(f"optimal masks: {result.optimal_masks}, candidates: {len(result)}"
              + (" (truncated)" if result.truncated else ""))
        shown = result.candidates if args.all else result.candidates[:1]
        for cand in shown:
            print(f"mask {cand.mask}, order {[i + 1 for i in cand.order]}")
        print(serialize_code_file(result[0].system, fmt=args.format), end="")
        return EXIT_OK

    def cmd_spectrum(self, args) -> int:
        system = self._load(args.code)
        for i, code in enumerate(system.codes):
            dist = power(spectrum(code, system.d), args.n)
            print(f"# C{i + 1}^{args.n}")
            print(format_distribution(dist))
        return EXIT_OK

    def cmd_moments(self, args) -> int:
        system = self._load(args.code)
        rows = []
        for i, code in enumerate(system.codes):
            stats = moments(power(spectrum(code, system.d), args.n))
            rows.append({
                "constituent": i + 1,
                "mean": format_fraction(stats.mean),
                "variance": format_fraction(stats.variance),
                "rho3": "" if stats.rho3 is None else f"{stats.rho3:.12g}",
            })
        print(pd.DataFrame(rows).set_index("constituent").to_string())
        return EXIT_OK

    def _print_result(self, result):
        print(f"n={result.params.n}  g={list(result.params.g)}  d_new={result.dim}")
        for i, size in enumerate(result.sizes):
            print(f"|C{i + 1}*| = {size}")
        print(f"|A*| = {result.a_size}  |B*| = {result.b_size}")
        print(f"rate: {self._rate(result.rate)}")

    def cmd_improve(self, args) -> int:
        norm = self._normalized(self._load(args.code), args.as_given)
        params = GlueParams(args.n, tuple(args.g))
        result = improved_sizes(norm, params)
        self._print_result(result)
        cert = weight_separation(norm, params, result)
        print(f"separation: A side <= {format_fraction(cert.a_side_max)}, "
              f"B side >= {format_fraction(cert.b_side_min)}, gap {format_fraction(cert.gap)}")
        if args.materialize:
            glued = materialize_small(norm, params, self.config.tuple_guard)
            report = verify_ud(glued, self.config.tuple_guard)
            write_code_file(args.materialize, glued)
            print(f"materialized system is {'UD' if report.is_ud else 'NOT UD'}")
            if not report.is_ud:
                return EXIT_FAILURE
        return EXIT_OK

    def _custom_config(self, norm: CodeSystem, args) -> SearchConfig:
        base = symmetry_groups(norm, args.nmax)
        groups = base.groups
        pinned = base.zero_fixed
        if args.groups:
            listed = [tuple(i - 1 for i in _int_list(part)) for part in args.groups.split(";") if part.strip()]
            named = {i for g in listed for i in g}
            groups = tuple(listed) + tuple((i,) for i in range(1, norm.T) if i not in named)
        if args.pin is not None:
            pinned = frozenset(i - 1 for i in args.pin)
        g_max = {i: args.gmax for i in range(1, norm.T)} if args.gmax is not None else None
        return SearchConfig(args.nmax, groups, pinned, g_max)

    def cmd_search(self, args) -> int:
        system = self._load(args.code)
        custom = args.groups is not None or args.pin is not None
        if custom and not args.as_given:
            raise ValueError("--groups and --pin refer to the given indices and need --as-given")
        started = time.monotonic()
        if args.as_given:
            config = self._custom_config(system, args)
            outcome = search(system, config, self.config.sigma_cap_factor, self.config.tie_tolerance)
        else:
            found = search_normalizations(system, args.nmax, args.gmax, self.config.sigma_cap_factor,
                                          self.config.tie_tolerance, self.config.normalize_cap)
            outcome = found.outcome
            print(f"normalization: mask {found.candidate.mask}, order "
                  f"{[i + 1 for i in found.candidate.order]} ({found.candidates_tried} distinct candidate(s))")
        print(f"search space: {outcome.search_space}")
        print(f"points evaluated: {outcome.evaluated}")
        self._print_result(outcome.best)
        if outcome.ties:
            print("ties: " + "; ".join(f"n={t.n} g={list(t.g)}" for t in outcome.ties))
        else:
            print("ties: none")
        if outcome.cap_hits:
            print(f"optimum reached a fixed g cap at {len(outcome.cap_hits)} (n, index) point(s)")
        logger.info("search finished", extra={'command': 'search', 'code_name': system.name,
                                              'elapsed': time.monotonic() - started})
        return EXIT_OK

    def cmd_bounds(self, args) -> int:
        print(f"T={args.users}  upper bound: {round_up(upper_bound(args.users), self.precision)}")
        return EXIT_OK

    def cmd_analyze(self, args) -> int:
        norm = self._normalized(self._load(args.code), False)
        params = theorem1_params(norm)
        print(f"seed rate: {self._rate(sum_rate_seed(norm))}")
        print(f"kappa: {format_fraction(params.kappa)}")
        print(f"beta: {params.beta:.12g}")
        print(f"alpha: {'undefined' if params.alpha is None else f'{params.alpha:.12g}'}")
        print(f"positive-variance constituents: {sorted(i + 1 for i in params.I)}")
        n0 = smallest_improving_n(params, self.config.theorem_n_limit)
        print(f"smallest improving n: {n0 if n0 is not None else f'none up to {self.config.theorem_n_limit}'}")
        ns = args.n or ([n0] if n0 is not None else [])
        rows = []
        for n, theta, guaranteed in theta_profile(params, ns):
            row = {"n": n, "theta": f"{theta:.6g}", "guaranteed": f"{guaranteed:.9f}"}
            if norm.d * n <= 4096:
                try:
                    row["construction"] = self._rate(theorem_construction(norm, n).rate)
                except EmptyConstituentError:
                    row["construction"] = "empty"
            rows.append(row)
        if rows:
            print(pd.DataFrame(rows).set_index("n").to_string())
        return EXIT_OK

    def cmd_discover(self, args) -> int:
        spec = DiscoverySpec(
            d=args.d,
            sizes=tuple(args.sizes),
            budget=args.budget if args.budget is not None else self.config.tabu_budget,
            tenure=args.tenure if args.tenure is not None else self.config.tabu_tenure,
            seed=args.seed,
            stagnation=self.config.tabu_stagnation,
            guard=self.config.tuple_guard,
        )
        found = tabu_search(spec)
        if isinstance(found, DiscoveryFailure):
            print(f"no UD system found ({found.reason}): best {found.best_conflicts} conflicting pair(s) "
                  f"after {found.iterations} moves, {found.restarts} restart(s)")
            return EXIT_FAILURE
        print(f"found UD system, sum rate {self._rate(sum_rate_seed(found))}")
        if args.out:
            write_code_file(args.out, found, fmt=args.format)
        else:
            print(serialize_code_file(found, fmt=args.format), end="")
        return EXIT_OK

    def cmd_catalog(self, args) -> int:
        if not args.name:
            for name in catalog_names():
                entry = catalog_get(name)
                print(f"{name}: T={entry.T} d={entry.system.d} sizes={entry.system.sizes}")
            return EXIT_OK
        entry = catalog_get(args.name)
        print(serialize_code_file(entry.system, fmt=args.format), end="")
        return EXIT_OK

    def cmd_table1(self, args) -> int:
        report = run_table1(args.precision)
        print(report.frame.to_string())
        for message in report.mismatches:
            print(f"MISMATCH {message}")
        return EXIT_OK if report.ok else EXIT_FAILURE

    #####################################################################################

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            return EXIT_USAGE if e.code else EXIT_OK
        if args.log_level:
            self.config.log_level = args.log_level.upper()
        configure_logging(self.config)
        self.precision = args.precision if args.precision is not None else self.config.rate_precision
        logger.info(f"running {args.command}", extra={'command': args.command})

        try:
            return args.handler(args)
        except (CodeFormatError, InvalidPermutationError, InvalidSizesError,
                UnknownCatalogEntryError, FileNotFoundError, ValueError) as e:
            logger.error(f"{args.command}: {e}", extra={'command': args.command})
            print(f"error: {e}", file=sys.stderr)
            return EXIT_USAGE
        except AdderCodeError as e:
            logger.error(f"{args.command}: {e}", extra={'command': args.command})
            print(f"error: {e}", file=sys.stderr)
            return EXIT_FAILURE


def main(argv: Optional[Sequence[str]] = None) -> int:
    sys.set_int_max_str_digits(0)
    return AdderCodeApp().run(argv)


if __name__ == '__main__':
    sys.exit(main())
