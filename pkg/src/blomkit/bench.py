"""Experiment runner: the worked example, key-agreement exchanges and the
original-vs-modified effort comparison grid."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import random
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

from blomkit.blom import (
    BlomInstance,
    NodeKeyMaterial,
    PublicMatrixG,
    SchemeParams,
    compute_share_matrix,
    derive_column_from_seed,
    full_key_matrix,
    gen_secret_matrix,
    pairwise_key,
    pairwise_key_raw,
    secret_matrix_from_rows,
    setup_original_scheme,
)
from blomkit.cost import CostLedger, CostModelSpec, measured_dot, measured_key_agreement
from blomkit.field import FieldMatrix, PrimeField, largest_prime_leq
from blomkit.modified import (
    build_modified_adjacency,
    column_from_neighbors,
    paper_topology,
    random_connected_topology,
    select_public_matrix,
    setup_modified_scheme,
)

CSV_HEADER = [
    "n",
    "lambda",
    "bound",
    "q",
    "scheme",
    "trial_count",
    "mean_total_effort",
    "mean_digit_mults",
    "mean_digit_adds",
]

PAPER_BOUNDS = (50, 100, 150, 200, 250, 300, 350)
PAPER_SETTINGS = ((6, 3), (8, 6))


class ConfigError(ValueError):
    pass


class UnprovisionedNodeError(LookupError):
    pass


class AgreementFailure(RuntimeError):
    pass


# -- key agreement exchange ----------------------------------------------------


@dataclass(frozen=True)
class AgreementOutcome:
    i: int
    j: int
    key_i: int
    key_j: int
    messages: tuple[dict, ...]

    @property
    def agreement(self) -> bool:
        return self.key_i == self.key_j

    @property
    def key(self) -> int | None:
        return self.key_i if self.agreement else None

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "key_i": self.key_i,
            "key_j": self.key_j,
            "agreement": self.agreement,
        }


def _column_from_message(msg: dict, receiver: NodeKeyMaterial) -> tuple[int, ...]:
    f = receiver.field
    if "public_seed" in msg:
        return derive_column_from_seed(msg["public_seed"], receiver.lam, f)
    return column_from_neighbors(msg["node_id"], msg["neighbors"], receiver.lam, f)


def run_key_agreement_exchange(
    instance: BlomInstance | Mapping[int, NodeKeyMaterial], i: int, j: int
) -> AgreementOutcome:
    """Both nodes send their public info in plaintext, then each derives the key."""
    if i == j:
        raise ValueError("key agreement needs two distinct nodes")
    nodes = {m.node_id: m for m in instance.nodes} if isinstance(instance, BlomInstance) else instance
    for k in (i, j):
        if k not in nodes:
            raise UnprovisionedNodeError(f"node {k} holds no key material")
    node_i, node_j = nodes[i], nodes[j]
    to_j = json.loads(json.dumps(node_i.public_info()))
    to_i = json.loads(json.dumps(node_j.public_info()))
    key_i = pairwise_key(node_i.private_row, _column_from_message(to_i, node_i), node_i.field)
    key_j = pairwise_key(node_j.private_row, _column_from_message(to_j, node_j), node_j.field)
    return AgreementOutcome(i, j, key_i, key_j, (to_j, to_i))


# -- experiment grid -------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    lam: int
    field_bounds: tuple[int, ...] = PAPER_BOUNDS
    trials: int = 10
    topology: str = "random"
    edge_probability: float = 0.5
    rng_seed: int = 0
    baseline: str = "vandermonde"
    cost_model: CostModelSpec = field(default_factory=CostModelSpec)

    def __post_init__(self):
        object.__setattr__(self, "field_bounds", tuple(self.field_bounds))
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.lam < 1 or self.lam + 1 > self.n:
            raise ConfigError(f"need 1 <= lambda and lambda + 1 <= n, got n={self.n}, lambda={self.lam}")
        if not self.field_bounds:
            raise ConfigError("no field bounds given")
        for bound in self.field_bounds:
            if bound < self.n + 2:
                raise ConfigError(f"field bound {bound} too small for n={self.n}")
            if largest_prime_leq(bound) <= self.n:
                raise ConfigError(f"no prime above n={self.n} within bound {bound}")
        if self.topology not in ("random", "fixture"):
            raise ConfigError(f"topology must be 'random' or 'fixture', got {self.topology!r}")
        if self.topology == "fixture" and self.n != paper_topology().n:
            raise ConfigError("the fixture topology has 6 nodes")
        if not 0 <= self.edge_probability <= 1:
            raise ConfigError("edge probability must lie in [0, 1]")
        if self.baseline not in ("vandermonde", "random-matrix"):
            raise ConfigError(f"unknown baseline {self.baseline!r}")

    @classmethod
    def from_dict(cls, data: Mapping) -> ExperimentConfig:
        known = {
            "n", "lambda", "field_bounds", "trials", "topology",
            "edge_probability", "rng_seed", "baseline", "cost_model",
        }
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            kwargs = {"n": int(data["n"]), "lam": int(data["lambda"])}
        except KeyError as exc:
            raise ConfigError(f"missing config key {exc}") from None
        for key in ("trials", "rng_seed"):
            if key in data:
                kwargs[key] = int(data[key])
        for key in ("topology", "baseline"):
            if key in data:
                kwargs[key] = str(data[key])
        if "edge_probability" in data:
            kwargs["edge_probability"] = float(data["edge_probability"])
        if "field_bounds" in data:
            kwargs["field_bounds"] = tuple(int(b) for b in data["field_bounds"])
        if "cost_model" in data:
            kwargs["cost_model"] = CostModelSpec.from_dict(data["cost_model"])
        return cls(**kwargs)


def load_configs(doc: Mapping) -> list[ExperimentConfig]:
    """Parse a config document: one experiment, or shared keys plus an ``experiments`` list."""
    if "experiments" not in doc:
        return [ExperimentConfig.from_dict(doc)]
    shared = {k: v for k, v in doc.items() if k != "experiments"}
    return [ExperimentConfig.from_dict({**shared, **exp}) for exp in doc["experiments"]]


def paper_grid(trials: int = 10, rng_seed: int = 0, **overrides) -> list[ExperimentConfig]:
    return [
        ExperimentConfig(n=n, lam=lam, trials=trials, rng_seed=rng_seed, **overrides)
        for n, lam in PAPER_SETTINGS
    ]


@dataclass(frozen=True)
class ComparisonRow:
    n: int
    lam: int
    bound: int
    q: int
    scheme: str
    mean_total_effort: float
    mean_digit_mults: float
    mean_digit_adds: float
    trials: int

    def as_csv(self) -> list[str]:
        return [
            str(self.n),
            str(self.lam),
            str(self.bound),
            str(self.q),
            self.scheme,
            str(self.trials),
            repr(float(self.mean_total_effort)),
            repr(float(self.mean_digit_mults)),
            repr(float(self.mean_digit_adds)),
        ]


def trial_seed(config_seed: int, n: int, lam: int, bound: int, trial: int) -> int:
    digest = hashlib.sha256(f"{config_seed}:{n}:{lam}:{bound}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _random_public_matrix(params: SchemeParams, rng: random.Random) -> PublicMatrixG:
    rows = [[rng.randrange(params.q) for _ in range(params.n)] for _ in range(params.lam + 1)]
    return PublicMatrixG(FieldMatrix.from_rows(rows))


def _check_all_pairs(n: int, key) -> None:
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if key(i, j) != key(j, i):
                raise AgreementFailure(f"nodes {i} and {j} derived different keys")


def all_pairs_effort(instance: BlomInstance, spec: CostModelSpec) -> CostLedger:
    """Effort of one derivation per unordered pair, by the lower-numbered node."""
    _check_all_pairs(instance.n, instance.key)
    total = CostLedger()
    for i in range(1, instance.n + 1):
        for j in range(i + 1, instance.n + 1):
            key, ledger = measured_key_agreement(instance, i, j, spec)
            if key != instance.key(i, j):
                raise AgreementFailure(f"measured key for ({i}, {j}) differs from direct key")
            total += ledger
    return total


def _random_baseline_effort(params: SchemeParams, d, rng: random.Random, spec: CostModelSpec) -> CostLedger:
    f = params.field
    g = _random_public_matrix(params, rng)
    a = compute_share_matrix(d, g, f)
    key = lambda i, j: pairwise_key(a.row(i), g.column(j), f)  # noqa: E731
    _check_all_pairs(params.n, key)
    total = CostLedger()
    for i in range(1, params.n + 1):
        for j in range(i + 1, params.n + 1):
            # columns arrive in plaintext; no arithmetic to obtain them
            _, ledger = measured_dot(a.row(i), g.column(j), f, spec)
            total += ledger
    return total


def run_trial(config: ExperimentConfig, bound: int, trial: int) -> dict[str, CostLedger]:
    f = PrimeField(largest_prime_leq(bound))
    params = SchemeParams(f, config.n, config.lam)
    rng = random.Random(trial_seed(config.rng_seed, config.n, config.lam, bound, trial))
    if config.topology == "fixture":
        topo = paper_topology()
    else:
        topo = random_connected_topology(config.n, rng, config.edge_probability)
    d = gen_secret_matrix(params, rng.getrandbits(64))
    spec = config.cost_model
    if config.baseline == "vandermonde":
        original = all_pairs_effort(setup_original_scheme(params, d=d), spec)
    else:
        original = _random_baseline_effort(params, d, rng, spec)
    modified = all_pairs_effort(setup_modified_scheme(topo, config.lam, f, d=d), spec)
    return {"original": original, "modified": modified}


def run_experiment(config: ExperimentConfig) -> list[ComparisonRow]:
    rows = []
    original_name = "original" if config.baseline == "vandermonde" else "original-random"
    for bound in config.field_bounds:
        q = largest_prime_leq(bound)
        ledgers: dict[str, list[CostLedger]] = {"original": [], "modified": []}
        for trial in range(config.trials):
            for scheme, ledger in run_trial(config, bound, trial).items():
                ledgers[scheme].append(ledger)
        for scheme, name in (("original", original_name), ("modified", "modified")):
            runs = ledgers[scheme]
            k = len(runs)
            rows.append(
                ComparisonRow(
                    n=config.n,
                    lam=config.lam,
                    bound=bound,
                    q=q,
                    scheme=name,
                    mean_total_effort=sum(r.total_effort for r in runs) / k,
                    mean_digit_mults=sum(r.digit_mults for r in runs) / k,
                    mean_digit_adds=sum(r.digit_adds for r in runs) / k,
                    trials=k,
                )
            )
    return rows


def run_grid(configs: Sequence[ExperimentConfig]) -> list[ComparisonRow]:
    return [row for config in configs for row in run_experiment(config)]


def effort_gaps(rows: Sequence[ComparisonRow]) -> dict[tuple[int, int, int], float]:
    """original - modified mean effort, keyed by (n, lambda, bound)."""
    by_key: dict[tuple[int, int, int], dict[str, float]] = {}
    for row in rows:
        scheme = "modified" if row.scheme == "modified" else "original"
        by_key.setdefault((row.n, row.lam, row.bound), {})[scheme] = row.mean_total_effort
    return {k: v["original"] - v["modified"] for k, v in by_key.items()}


def rows_to_csv(rows: Sequence[ComparisonRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.as_csv())
    return buf.getvalue()


def rows_from_csv(text: str) -> list[ComparisonRow]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    return [
        ComparisonRow(
            n=int(r["n"]),
            lam=int(r["lambda"]),
            bound=int(r["bound"]),
            q=int(r["q"]),
            scheme=r["scheme"],
            mean_total_effort=float(r["mean_total_effort"]),
            mean_digit_mults=float(r["mean_digit_mults"]),
            mean_digit_adds=float(r["mean_digit_adds"]),
            trials=int(r["trial_count"]),
        )
        for r in reader
    ]


# -- worked example ----------------------------------------------------------------


def paper_example() -> dict:
    text = resources.files("blomkit.data").joinpath("paper_example.json").read_text()
    return json.loads(text)


def paper_instance() -> BlomInstance:
    golden = paper_example()
    f = PrimeField(golden["q"])
    d = secret_matrix_from_rows(golden["secret_matrix"], f)
    return setup_modified_scheme(paper_topology(), golden["lambda"], f, d=d)


@dataclass
class DemoReport:
    checks: list[tuple[str, bool, object, object]] = field(default_factory=list)
    lines: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _, _ in self.checks)

    @property
    def mismatches(self) -> list[str]:
        return [name for name, ok, _, _ in self.checks if not ok]

    def check(self, name: str, expected, actual) -> None:
        ok = expected == actual
        self.checks.append((name, ok, expected, actual))
        if not ok:
            self.lines.append(f"MISMATCH {name}: expected {expected}, got {actual}")

    def text(self) -> str:
        status = "all golden values match" if self.ok else f"{len(self.mismatches)} golden mismatches"
        return "\n".join(self.lines + [status]) + "\n"


def _fmt(rows) -> list[str]:
    width = max(len(str(x)) for row in rows for x in row)
    return ["  " + " ".join(str(x).rjust(width) for x in row) for row in rows]


def demo_paper_example() -> DemoReport:
    golden = paper_example()
    report = DemoReport()
    f = PrimeField(golden["q"])
    lam = golden["lambda"]
    topo = paper_topology()
    report.lines.append(f"N={topo.n}, lambda={lam}, q={f.q}, edges={sorted(topo.edges)}")

    adj = build_modified_adjacency(topo, f)
    report.check("modified adjacency", golden["modified_adjacency"], adj.matrix.to_lists())
    report.lines += ["modified adjacency matrix:"] + _fmt(adj.matrix.entries)

    g = select_public_matrix(adj, lam)
    report.check("public matrix G", golden["public_matrix"], g.matrix.to_lists())
    report.lines += ["public matrix G:"] + _fmt(g.matrix.entries)

    d = secret_matrix_from_rows(golden["secret_matrix"], f)
    report.lines += ["secret matrix D:"] + _fmt(d.matrix.entries)

    a = compute_share_matrix(d, g, f)
    for r, (want, got) in enumerate(zip(golden["share_matrix"], a.matrix.to_lists()), start=1):
        report.check(f"A row {r}", want, got)
    report.lines += [f"A = (D.G)^T mod {f.q}:"] + _fmt(a.matrix.entries)

    for pair in golden["pair_keys"]:
        i, j = pair["i"], pair["j"]
        kv = pairwise_key_raw(a.row(i), g.column(j), f)
        report.check(f"K[{i},{j}] raw", pair["raw"], kv.raw)
        report.check(f"K[{i},{j}] key", pair["key"], kv.key)
        report.lines.append(f"K[{i},{j}] = A{i} . G{j} = {kv.raw} mod {f.q} = {kv.key}")

    k = full_key_matrix(a, g, f)
    for r, (want, got) in enumerate(zip(golden["raw_key_matrix"], k.raw), start=1):
        report.check(f"raw K row {r}", want, list(got))
    report.lines += ["raw K = A.G:"] + _fmt(k.raw)
    asym = sum(
        1 for i in range(1, topo.n + 1) for j in range(i + 1, topo.n + 1) if k.key(i, j) != k.key(j, i)
    )
    report.check("reduced K asymmetric pairs", 0, asym)
    report.lines += [f"K mod {f.q}:"] + _fmt(k.reduced.entries)
    return report


def config_from_file(path: str | Path) -> list[ExperimentConfig]:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return load_configs(doc)


def with_baseline(configs: Sequence[ExperimentConfig], baseline: str) -> list[ExperimentConfig]:
    return [replace(c, baseline=baseline) for c in configs]

