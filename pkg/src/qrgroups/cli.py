"""Command-line client for the verification service.

Every subcommand issues one HTTP request: against a remote server when
--url is given, otherwise against an in-process application instance, so
no server needs to be running for local use.  Output is deterministic
JSON (sorted keys) on stdout; rerunning the same command with the same
seed produces byte-identical bytes.

Exit codes: 0 all verifications passed, 2 some verification failed,
3 resource limits hit, 4 usage errors.
"""

from __future__ import annotations

import asyncio
import json
import sys
from dataclasses import dataclass

import click
import httpx

EXIT_OK = 0
EXIT_VERIFICATION = 2
EXIT_RESOURCE = 3
EXIT_USAGE = 4

_APP = None


def _in_process_app():
    global _APP
    if _APP is None:
        from .service import create_app
        _APP = create_app()
    return _APP


@dataclass
class RunConfig:
    seed: int = 42
    tolerance: float = 1e-9
    workers: int = 1
    element_budget: int = 100_000
    node_budget: int = 10_000_000
    output: str | None = None
    url: str | None = None


_CONFIG_KEYS = ("seed", "tolerance", "workers", "element_budget",
                "node_budget", "output", "url")


def resolve_config(config_path: str | None, **flags) -> RunConfig:
    """File values fill in unset flags; explicit flags always win."""
    merged = RunConfig()
    if config_path:
        with open(config_path, encoding="utf-8") as handle:
            data = json.load(handle)
        unknown = set(data) - set(_CONFIG_KEYS)
        if unknown:
            raise click.UsageError(
                f"unknown config keys: {', '.join(sorted(unknown))}")
        for key in _CONFIG_KEYS:
            if key in data:
                setattr(merged, key, data[key])
    for key, value in flags.items():
        if value is not None:
            setattr(merged, key, value)
    if merged.workers < 1:
        raise click.UsageError("workers must be >= 1")
    return merged


def common_options(fn):
    options = [
        click.option("--seed", type=int, default=None,
                     help="Random seed [default: 42]."),
        click.option("--tolerance", type=float, default=None,
                     help="Numeric comparison tolerance [default: 1e-9]."),
        click.option("--workers", type=int, default=None,
                     help="Worker count; runs are sequential today, the "
                          "flag is validated and recorded [default: 1]."),
        click.option("--element-budget", type=int, default=None,
                     help="Max elements to enumerate [default: 100000]."),
        click.option("--node-budget", type=int, default=None,
                     help="Max search nodes [default: 10000000]."),
        click.option("--output", type=click.Path(writable=True), default=None,
                     help="Write JSON here instead of stdout."),
        click.option("--url", type=str, default=None,
                     help="Base URL of a running server; in-process when "
                          "omitted."),
        click.option("--config", "config_path",
                     type=click.Path(exists=True, dir_okay=False),
                     default=None,
                     help="JSON config file; flags override its values."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def request(config: RunConfig, path: str, payload: dict) -> tuple[int, dict]:
    if config.url:
        with httpx.Client(base_url=config.url, timeout=600.0) as client:
            response = client.post(path, json=payload)
            return response.status_code, response.json()

    async def _go():
        transport = httpx.ASGITransport(app=_in_process_app())
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://qrgroups",
                                     timeout=None) as client:
            response = await client.post(path, json=payload)
            return response.status_code, response.json()

    return asyncio.run(_go())


def _has_failure(body) -> bool:
    if isinstance(body, dict):
        for key, value in body.items():
            if key == "pass" and value is False:
                return True
            if key == "failures" and value:
                return True
            if key == "order_matches" and value is False:
                return True
            if _has_failure(value):
                return True
        return False
    if isinstance(body, list):
        return any(_has_failure(item) for item in body)
    return False


def emit(config: RunConfig, status: int, body: dict) -> None:
    text = json.dumps(body, indent=2, sort_keys=True) + "\n"
    if config.output:
        with open(config.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    if status == 422 or status == 400:
        raise SystemExit(EXIT_USAGE)
    if status == 413:
        raise SystemExit(EXIT_RESOURCE)
    if status != 200:
        raise SystemExit(1)
    raise SystemExit(EXIT_VERIFICATION if _has_failure(body) else EXIT_OK)


def _group_payload(family, k, p, n, depth, factors, config) -> dict:
    payload: dict = {"family": family, "n": n, "depth": depth,
                     "element_budget": config.element_budget}
    if k is not None:
        payload["k"] = k
    if p is not None:
        payload["p"] = p
    if factors:
        payload["factors"] = factors
    return payload


def _parse_factors(_ctx, _param, value):
    if value is None:
        return None
    try:
        factors = [int(piece) for piece in value.replace(" ", "").split(",")
                   if piece]
    except ValueError as exc:
        raise click.BadParameter("expected comma-separated integers") from exc
    if not factors:
        raise click.BadParameter("expected at least one factor")
    return factors


group_flags = [
    click.option("--family", required=True,
                 type=click.Choice(["sl", "sp", "alt", "sym", "tree",
                                    "abelian", "quaternion"]),
                 help="Group family to build."),
    click.option("--k", type=int, default=None,
                 help="Size parameter: matrix k, points for alt/sym, "
                      "branching degree for tree."),
    click.option("--p", type=int, default=None, help="Prime modulus base."),
    click.option("--n", type=int, default=1, help="Ring is Z/p^n."),
    click.option("--depth", type=int, default=1,
                 help="Tree quotient level (1 or 2)."),
    click.option("--factors", callback=_parse_factors, default=None,
                 help="Cyclic factors for abelian groups, e.g. 2,4."),
]


def with_group_flags(fn):
    for option in reversed(group_flags):
        fn = option(fn)
    return fn


@click.group()
@click.version_option()
def main() -> None:
    """Exact verification toolkit for quasi-random finite groups."""


@main.command()
@with_group_flags
@common_options
def group(family, k, p, n, depth, factors, config_path, **flags) -> None:
    """Build a group and print its descriptor."""
    config = resolve_config(config_path, **flags)
    payload = _group_payload(family, k, p, n, depth, factors, config)
    emit(config, *request(config, "/group", payload))


@main.command()
@with_group_flags
@click.option("--full", is_flag=True,
              help="Include the root-of-unity multiplicity tensor.")
@common_options
def degrees(family, k, p, n, depth, factors, full, config_path,
            **flags) -> None:
    """Character degrees, kernels, m(G), and m_f(G)."""
    config = resolve_config(config_path, **flags)
    payload = _group_payload(family, k, p, n, depth, factors, config)
    payload.update({"seed": config.seed, "full": full})
    emit(config, *request(config, "/degrees", payload))


@main.command()
@click.option("--family", required=True, type=click.Choice(["sl", "sp"]))
@click.option("--k", type=int, default=2)
@click.option("--p", type=int, required=True)
@click.option("--n", type=int, default=1)
@common_options
def bounds(family, k, p, n, config_path, **flags) -> None:
    """Computed m and m_f against the closed-form lower bounds."""
    config = resolve_config(config_path, **flags)
    payload = {"family": family, "k": k, "p": p, "n": n,
               "seed": config.seed, "element_budget": config.element_budget}
    emit(config, *request(config, "/bounds", payload))


@main.command()
@with_group_flags
@click.option("--trials", type=int, default=100, show_default=True,
              help="Random pairs per suite entry.")
@click.option("--m", "m_override", type=int, default=None,
              help="Override the minimal nontrivial degree.")
@common_options
def mixing(family, k, p, n, depth, factors, trials, m_override, config_path,
           **flags) -> None:
    """Seeded convolution mixing battery on one group."""
    config = resolve_config(config_path, **flags)
    payload = _group_payload(family, k, p, n, depth, factors, config)
    payload.update({"trials": trials, "seed": config.seed,
                    "tolerance": config.tolerance})
    if m_override is not None:
        payload["m"] = m_override
    emit(config, *request(config, "/mixing", payload))


@main.command()
@click.option("--mode", required=True,
              type=click.Choice(["search", "coset", "greedy",
                                 "formula-abelian", "formula-padic",
                                 "formula-series", "formula-tree",
                                 "formula-profinite"]))
@click.option("--family", type=str, default=None)
@click.option("--k", type=int, default=None)
@click.option("--p", type=int, default=None)
@click.option("--n", type=int, default=1)
@click.option("--depth", type=int, default=1)
@click.option("--factors", callback=_parse_factors, default=None)
@common_options
def pf(mode, family, k, p, n, depth, factors, config_path, **flags) -> None:
    """Product-free sets: exact search, cosets, or closed formulas."""
    config = resolve_config(config_path, **flags)
    payload: dict = {"mode": mode, "n": n, "depth": depth,
                     "seed": config.seed,
                     "element_budget": config.element_budget,
                     "node_budget": config.node_budget}
    if family is not None:
        payload["family"] = family
    if k is not None:
        payload["k"] = k
    if p is not None:
        payload["p"] = p
    if factors:
        payload["factors"] = factors
    emit(config, *request(config, "/pf", payload))


@main.command()
@click.option("--k", type=int, required=True, help="Branching degree.")
@click.option("--depth", type=int, default=1, show_default=True)
@common_options
def tree(k, depth, config_path, **flags) -> None:
    """Tree-quotient report: orders, minimal degree, subspace scan."""
    config = resolve_config(config_path, **flags)
    payload = {"k": k, "depth": depth, "seed": config.seed,
               "element_budget": config.element_budget}
    emit(config, *request(config, "/tree", payload))


def _summarize(entry: dict) -> str:
    command = entry.get("command", "?")
    if command == "group":
        return f"order {entry['group']['order']}"
    if command == "degrees":
        return f"m={entry['m']} m_f={entry['m_f']}"
    if command == "bounds":
        checks = ", ".join(f"{r['computed']}{r['relation']}{r['formula']}"
                           for r in entry["reports"])
        return checks
    if command == "mixing":
        failed = sum(row["failures"] for row in entry["suite"])
        return f"m={entry['m']} failures={failed}"
    if command == "pf":
        if "value" in entry:
            return f"value {entry['value']}"
        if "result" in entry:
            density = entry["result"]["density"]
            return f"density {density['num']}/{density['den']}"
        return f"lower {entry['lower']}"
    if command == "tree":
        return (f"order {entry['order']} "
                f"min_degree {entry['level1_min_degree']} "
                f"min_rank {entry['scan']['min_rank']}")
    return ""


def _render_table(results: list[dict]) -> str:
    lines = [f"{'#':>3}  {'command':<10} {'status':<6} summary"]
    for index, entry in enumerate(results, start=1):
        status = "FAIL" if _has_failure(entry) else "ok"
        lines.append(f"{index:>3}  {entry.get('command', '?'):<10} "
                     f"{status:<6} {_summarize(entry)}")
    return "\n".join(lines) + "\n"


@main.command()
@click.option("--manifest", "manifest_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="JSON array of command objects to run in order.")
@common_options
def report(manifest_path, config_path, **flags) -> None:
    """Run a manifest of commands and combine the results."""
    config = resolve_config(config_path, **flags)
    with open(manifest_path, encoding="utf-8") as handle:
        manifest = json.load(handle)
    if not isinstance(manifest, list):
        raise click.UsageError("manifest must be a JSON array")
    status, body = request(config, "/report",
                           {"manifest": manifest, "seed": config.seed})
    if status == 200:
        table_text = _render_table(body["results"])
        if config.output:
            sys.stdout.write(table_text)
        else:
            sys.stderr.write(table_text)
    emit(config, status, body)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port) -> None:
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run(_in_process_app(), host=host, port=port)


if __name__ == "__main__":
    main()
