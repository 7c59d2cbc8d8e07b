"""Command-line front end.

Subcommands: ``systems``, ``sigma-table``, ``exact``, ``verify``, ``kelly``,
``longrun``, ``simulate``.  Exit codes: 0 success, 1 verification failure,
2 usage or input error.
"""
from __future__ import annotations

import argparse
import sys

from .counting import (
    builtin_systems,
    get_system,
    parse_composition,
    parse_system_file,
)
from .errors import BadRangeError, ConfigError, TrueCountError
from .exact import sigma_n_approx, sigma_n_exact, tc_distribution
from .kelly import (
    FuzzyAdvantage,
    GrowthStats,
    growth_stats_binomial,
    growth_var_fuzzy,
    kelly_fraction,
    long_run,
)
from .reports import FORMATS, ReportTable
from .seats import SeatCardModel, n_cards_between
from .sim import (
    FixedAdvantageModel,
    SimulationReport,
    TwoPointAdvantageModel,
    simulate_bankroll,
    simulate_seat_sigma,
    simulate_tc_increment,
)
from .verify import verify_all, verify_kelly, verify_lemmas, verify_theorem

POSITION7_NOTE = (
    "* last-seat play->dealer dispersion follows this card-consumption model; "
    "published figures for that seat are half the model value (convention unknown)."
)


def _resolve_system(name: str, system_file: str | None):
    if system_file:
        with open(system_file, "r", encoding="utf-8") as fh:
            return parse_system_file(fh.read(), name=name or "custom")
    return get_system(name)


def cmd_systems() -> ReportTable:
    """Weight dispersion of every builtin system, 3-digit display."""
    systems = builtin_systems()
    return ReportTable(
        title="Builtin count systems",
        row_labels=[s.name for s in systems],
        col_labels=["sigma0"],
        cells=[[s.sigma0()] for s in systems],
    )


def cmd_sigma_table(
    system,
    decks: int,
    penetration: float,
    seats: int = 7,
    positions: list[int] | None = None,
    hand_mean: float = 2.6,
) -> ReportTable:
    """Bet- and play-moment true-count dispersion by seat (deck units)."""
    if not 0 < penetration < 1:
        raise BadRangeError(f"penetration must be in (0, 1), got {penetration}")
    positions = positions or [1, 4, 7]
    for p in positions:
        if not 1 <= p <= seats:
            raise BadRangeError(f"position {p} outside 1..{seats}")
    remaining = 52 * decks * (1 - penetration)
    cells_bet, cells_play = [], []
    markers = {}
    for idx, pos in enumerate(positions):
        model = SeatCardModel.with_hand_mean(seats, pos, hand_mean)
        n_bet = n_cards_between(model, "bet_play")
        n_play = n_cards_between(model, "play_dealer")
        cells_bet.append(52 * sigma_n_approx(remaining, n_bet, system))
        cells_play.append(52 * sigma_n_approx(remaining, n_play, system))
        if pos == seats:
            markers[(1, idx)] = "*"
    table = ReportTable(
        title=(
            f"{system.name}: sigma by position "
            f"({decks}-deck shoe, {penetration:.1%} played, {seats} seats)"
        ),
        row_labels=["sigma_bet", "sigma_play"],
        col_labels=[str(p) for p in positions],
        cells=[cells_bet, cells_play],
        cell_markers=markers,
    )
    if markers:
        table.notes.append(POSITION7_NOTE)
    return table


def cmd_exact(comp_spec: str, n: int, units: str = "deck") -> ReportTable:
    """Exact distribution and moments for a composition spec."""
    comp = parse_composition(comp_spec)
    dist = tc_distribution(comp, n)
    scale = 52 if units == "deck" else 1
    rows = [(str(v * scale), str(p), float(v * scale), float(p)) for v, p in dist.atoms]
    mean = dist.mean()
    var = dist.variance()
    closed = sigma_n_exact(comp, n)
    if var != closed.squared:
        raise AssertionError(
            f"enumerated variance {var} != closed form {closed.squared}"
        )
    table = ReportTable(
        title=(
            f"True count after {n} of {comp.total} cards removed "
            f"({units} units), composition {comp_spec}"
        ),
        row_labels=[r[0] for r in rows]
        + ["mean (exact)", "sigma (enumerated)", "sigma (closed form)"],
        col_labels=["probability"],
        cells=[[r[1]] for r in rows]
        + [
            [str(mean * scale)],
            [scale * float(var) ** 0.5],
            [scale * closed.value],
        ],
        precision=6,
    )
    return table


def cmd_verify(scope: str = "all", seed: int = 0) -> tuple[str, bool]:
    """Run a verification sweep; returns (text, all_passed)."""
    if scope == "lemmas":
        results = [verify_lemmas(seed=seed)]
    elif scope == "theorem":
        results = [verify_theorem(seed=seed)]
    elif scope == "kelly":
        results = [verify_kelly()]
    elif scope == "all":
        results = verify_all(seed=seed)
    else:
        raise BadRangeError(f"unknown verify scope {scope!r}")
    lines = [r.summary() for r in results]
    for r in results:
        lines.extend("  " + f for f in r.failures[:20])
    return "\n".join(lines) + "\n", all(r.passed for r in results)


def cmd_kelly(p0: float, var_p0: float = 0.0, hands: int = 1) -> ReportTable:
    """Kelly fraction and growth statistics for a (possibly noisy) advantage."""
    fraction = kelly_fraction(p0)
    if p0 <= 0.5:
        stats = GrowthStats(0.0, 0.0)
    elif var_p0 > 0:
        stats = growth_var_fuzzy(FuzzyAdvantage(p0, var_p0))
    else:
        stats = growth_stats_binomial(p0)
    return ReportTable(
        title=f"Kelly betting at p0={p0}, var_p0={var_p0}",
        row_labels=[
            "kelly fraction",
            "mean growth rate",
            "growth variance (1 hand)",
            f"growth std ({hands} hands)",
        ],
        col_labels=["value"],
        cells=[[fraction], [stats.mean], [stats.variance], [stats.std(hands)]],
        precision=8,
    )


def cmd_longrun(
    eps: float, sigma_bet_a: float, sigma_bet_b: float, threshold: float = 2.0
) -> ReportTable:
    """Long-run comparison for two bet-moment dispersion levels."""
    n_a = long_run(eps, sigma_bet_a, threshold)
    n_b = long_run(eps, sigma_bet_b, threshold)
    delta = n_b - n_a
    rel = delta / n_a if n_a else float("nan")
    # Favorable hands are roughly 40% of hands dealt, hence the x2.5 total;
    # 50 hands/hour converts totals to table time.
    rows = [
        ("favorable hands (a)", n_a),
        ("favorable hands (b)", n_b),
        ("delta favorable hands", delta),
        ("delta relative", rel),
        ("delta total hands (x2.5)", 2.5 * delta),
        ("delta hours at 50 hands/h", 2.5 * delta / 50),
        ("total hands (a, x2)", 2 * n_a),
        ("total hands (a, x2.5)", 2.5 * n_a),
        ("hours (a) at 50 hands/h", 2.5 * n_a / 50),
    ]
    return ReportTable(
        title=(
            f"Long run at eps={eps}, threshold={threshold}: "
            f"sigma_bet {sigma_bet_a} vs {sigma_bet_b}"
        ),
        row_labels=[r[0] for r in rows],
        col_labels=["value"],
        cells=[[r[1]] for r in rows],
        precision=1,
    )


# -- simulate ---------------------------------------------------------------

_CONFIG_KEYS = {
    "mode",
    "system",
    "decks",
    "penetration",
    "seats",
    "position",
    "trials",
    "seed",
    "hand_mean",
    "p",
    "p0",
    "var_p0",
    "hands",
    "n_cards",
}


def parse_config(text: str) -> dict:
    """Parse a ``key = value`` config; unknown keys fail with line numbers."""
    config: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in config:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        config[key] = value
    return config


def _require(config: dict, key: str, cast, default=None):
    if key not in config:
        if default is not None:
            return default
        raise ConfigError(f"missing required config key {key!r}")
    try:
        return cast(config[key])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value for config key {key!r}: {config[key]!r}") from exc


def run_simulation(config: dict) -> SimulationReport:
    """Dispatch a parsed simulation config to the engine."""
    mode = config.get("mode", "seat-sigma")
    seed = _require(config, "seed", int)
    trials = _require(config, "trials", int)
    if mode == "seat-sigma":
        system = get_system(_require(config, "system", str))
        decks = _require(config, "decks", int)
        penetration = _require(config, "penetration", float)
        seats = _require(config, "seats", int, default=7)
        position = _require(config, "position", int, default=1)
        hand_mean = _require(config, "hand_mean", float, default=2.6)
        model = SeatCardModel.with_hand_mean(seats, position, hand_mean)
        return simulate_seat_sigma(system, decks, penetration, model, trials, seed)
    if mode == "tc-increment":
        system = get_system(_require(config, "system", str))
        decks = _require(config, "decks", int)
        penetration = _require(config, "penetration", float)
        n_cards = [int(x) for x in str(_require(config, "n_cards", str)).split(",")]
        return simulate_tc_increment(system, decks, penetration, n_cards, trials, seed)
    if mode == "bankroll":
        hands = _require(config, "hands", int)
        if "p" in config:
            model = FixedAdvantageModel(_require(config, "p", float))
        else:
            model = TwoPointAdvantageModel(
                _require(config, "p0", float), _require(config, "var_p0", float)
            )
        return simulate_bankroll(model, hands, trials, seed)
    raise ConfigError(f"unknown mode {mode!r}")


def _prediction_lines(config: dict, report: SimulationReport) -> list[str]:
    """Closed-form predictions rendered next to the empirical statistics."""
    lines = []
    mode = config.get("mode", "seat-sigma")
    if mode == "seat-sigma":
        system = get_system(config["system"])
        decks = int(config["decks"])
        penetration = float(config["penetration"])
        seats = int(config.get("seats", 7))
        position = int(config.get("position", 1))
        hand_mean = float(config.get("hand_mean", 2.6))
        model = SeatCardModel.with_hand_mean(seats, position, hand_mean)
        remaining = 52 * decks * (1 - penetration)
        for label, pair in (("sigma_bet", "bet_play"), ("sigma_play", "play_dealer")):
            pred = 52 * sigma_n_approx(remaining, n_cards_between(model, pair), system)
            lines.append(f"predicted {label} (closed form): {pred:.6f}")
    elif mode == "bankroll" and "p" in config:
        p = float(config["p"])
        hands = int(config["hands"])
        if p > 0.5:
            stats = growth_stats_binomial(p)
            lines.append(f"predicted growth mean (closed form): {stats.mean:.6e}")
            lines.append(f"predicted growth std over {hands} hands: {stats.std(hands):.6e}")
    elif mode == "bankroll":
        p0, var_p0 = float(config["p0"]), float(config["var_p0"])
        hands = int(config["hands"])
        if p0 > 0.5:
            stats = growth_var_fuzzy(FuzzyAdvantage(p0, var_p0))
            lines.append(f"predicted growth mean (first order): {stats.mean:.6e}")
            lines.append(f"predicted growth std over {hands} hands: {stats.std(hands):.6e}")
    return lines


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="truecount",
        description="True-count dispersion, Kelly long-run analytics, and Monte Carlo checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=FORMATS, default="table")

    p = sub.add_parser("systems", help="builtin count systems and their sigma0")
    add_format(p)

    p = sub.add_parser("sigma-table", help="sigma_bet / sigma_play by seat position")
    p.add_argument("--system", default="hi-lo")
    p.add_argument("--system-file", default=None)
    p.add_argument("--decks", type=int, default=8)
    p.add_argument("--penetration", type=float, required=True)
    p.add_argument("--seats", type=int, default=7)
    p.add_argument("--positions", default="1,4,7", help="comma-separated seat list")
    p.add_argument("--hand-mean", type=float, default=2.6)
    add_format(p)

    p = sub.add_parser("exact", help="exact true-count law for a composition")
    p.add_argument("-c", "--composition", required=True)
    p.add_argument("-n", "--n", type=int, required=True)
    p.add_argument("--units", choices=("card", "deck"), default="deck")
    add_format(p)

    p = sub.add_parser("verify", help="run exact verification sweeps")
    p.add_argument("scope", nargs="?", default="all",
                   choices=("lemmas", "theorem", "kelly", "all"))
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("kelly", help="Kelly fraction and growth statistics")
    p.add_argument("--p0", type=float, required=True)
    p.add_argument("--var-p0", type=float, default=0.0)
    p.add_argument("--hands", type=int, default=1)
    add_format(p)

    p = sub.add_parser("longrun", help="long-run hand counts for two sigma_bet levels")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--sigma-bet-a", type=float, default=0.0)
    p.add_argument("--sigma-bet-b", type=float, default=0.0)
    p.add_argument("--threshold", type=float, default=2.0)
    add_format(p)

    p = sub.add_parser("simulate", help="run a seeded Monte Carlo experiment")
    p.add_argument("--config", default=None, help="key = value config file")
    p.add_argument("--mode", default=None,
                   choices=("seat-sigma", "bankroll", "tc-increment"))
    p.add_argument("--system", default=None)
    p.add_argument("--decks", default=None)
    p.add_argument("--penetration", default=None)
    p.add_argument("--seats", default=None)
    p.add_argument("--position", default=None)
    p.add_argument("--hand-mean", dest="hand_mean", default=None)
    p.add_argument("--trials", default=None)
    p.add_argument("--seed", default=None)
    p.add_argument("--p", default=None)
    p.add_argument("--p0", default=None)
    p.add_argument("--var-p0", dest="var_p0", default=None)
    p.add_argument("--hands", default=None)
    p.add_argument("--n-cards", dest="n_cards", default=None)
    add_format(p)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "systems":
            out.write(cmd_systems().render(args.format))
        elif args.command == "sigma-table":
            system = _resolve_system(args.system, args.system_file)
            positions = [int(x) for x in args.positions.split(",")]
            table = cmd_sigma_table(
                system, args.decks, args.penetration, args.seats, positions,
                args.hand_mean,
            )
            out.write(table.render(args.format))
        elif args.command == "exact":
            out.write(cmd_exact(args.composition, args.n, args.units).render(args.format))
        elif args.command == "verify":
            text, ok = cmd_verify(args.scope, args.seed)
            out.write(text)
            return 0 if ok else 1
        elif args.command == "kelly":
            out.write(cmd_kelly(args.p0, args.var_p0, args.hands).render(args.format))
        elif args.command == "longrun":
            table = cmd_longrun(
                args.eps, args.sigma_bet_a, args.sigma_bet_b, args.threshold
            )
            out.write(table.render(args.format))
        elif args.command == "simulate":
            config: dict = {}
            if args.config:
                with open(args.config, "r", encoding="utf-8") as fh:
                    config = parse_config(fh.read())
            for key in _CONFIG_KEYS:
                value = getattr(args, key, None)
                if value is not None:
                    config[key] = value
            report = run_simulation(config)
            if args.format == "json":
                out.write(report.to_json() + "\n")
            elif args.format == "csv":
                out.write(report.to_csv())
            else:
                out.write(report.to_json() + "\n")
                for line in _prediction_lines(config, report):
                    out.write(line + "\n")
    except TrueCountError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
