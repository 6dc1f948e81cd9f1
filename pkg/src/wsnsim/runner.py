"""Scenario execution: one run, or a protocol x sink x seed matrix.

Each run gets its own generator seeded from (seed, protocol, sink mode),
so runs never share or reorder random draws and any single combination
can be reproduced in isolation.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .config import ScenarioConfig, energy_params, fingerprint, protocol_config
from .engine import Engine
from .metrics import RunHistory, RunSummary, summarize, write_csv, write_summary
from .network import NetworkState, deploy
from .protocols import ProtocolKind
from .sink import SinkMode, SinkState

SUMMARY_FILENAME = "summary.json"


@dataclass
class RunResult:
    protocol: ProtocolKind
    sink: SinkMode
    seed: int
    history: RunHistory
    summary: RunSummary
    network: NetworkState


def run_scenario(
    cfg: ScenarioConfig,
    protocol: str | ProtocolKind | None = None,
    sink: str | SinkMode | None = None,
    seed: int | None = None,
) -> RunResult:
    """Simulate one protocol/sink/seed combination for cfg.rounds rounds."""
    kind = protocol if isinstance(protocol, ProtocolKind) else ProtocolKind.parse(
        protocol if protocol is not None else cfg.protocol)
    mode = sink if isinstance(sink, SinkMode) else SinkMode.parse(
        sink if sink is not None else cfg.sink)
    run_seed = cfg.seed if seed is None else int(seed)

    rng = np.random.default_rng([run_seed, int(kind), int(mode)])
    pcfg = protocol_config(cfg, kind)
    net = deploy(
        cfg.nodes, cfg.field_m, cfg.initial_energy_j, rng,
        advanced_fraction=pcfg.advanced_fraction,
        advanced_factor=pcfg.advanced_factor,
        super_fraction=pcfg.super_fraction,
        super_factor=pcfg.super_factor,
    )
    sinkst = SinkState(mode, cfg.field_m, cfg.sink_step_m, cfg.sink_pause_rounds)
    eng = Engine(kind, pcfg, energy_params(cfg), net)
    hist = RunHistory()
    for rnd in range(cfg.rounds):
        hist.record_round(eng.step(net, sinkst, rnd, rng))
    summary = summarize(hist, kind.name.lower(), mode.name.lower(), run_seed)
    return RunResult(kind, mode, run_seed, hist, summary, net)


def artifact_name(kind: ProtocolKind, mode: SinkMode, seed: int) -> str:
    return f"{kind.name.lower()}_{mode.name.lower()}_seed{seed}.csv"


def run_matrix(
    cfg: ScenarioConfig,
    protocols=None,
    sinks=None,
    seeds=None,
    out_dir=None,
) -> list[RunResult]:
    """Run every combination in lexicographic (protocol, sink, seed) order.

    With `out_dir` set, writes one CSV per run plus a joint summary file.
    A failing run aborts the whole matrix, naming the combination.
    """
    kinds = [k if isinstance(k, ProtocolKind) else ProtocolKind.parse(k)
             for k in (protocols if protocols is not None else list(ProtocolKind))]
    modes = [m if isinstance(m, SinkMode) else SinkMode.parse(m)
             for m in (sinks if sinks is not None else list(SinkMode))]
    seed_list = [int(s) for s in (seeds if seeds is not None else [cfg.seed])]

    combos = sorted(
        ((k, m, s) for k in kinds for m in modes for s in seed_list),
        key=lambda t: (t[0].name, t[1].name, t[2]),
    )
    results: list[RunResult] = []
    for kind, mode, seed in combos:
        try:
            results.append(run_scenario(cfg, kind, mode, seed))
        except Exception as exc:
            raise RuntimeError(
                f"run failed for protocol={kind.name.lower()} "
                f"sink={mode.name.lower()} seed={seed}: {exc}"
            ) from exc

    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        fp = fingerprint(cfg)
        for res in results:
            write_csv(res.history, out / artifact_name(res.protocol, res.sink, res.seed))
        write_summary([r.summary for r in results], out / SUMMARY_FILENAME, fp)
    return results
