"""Real-coded island genetic algorithm (minimization).

Every parameter x is encoded by ``n_gen`` genes as x = Σ_j 10^{-j} g_j
(j = 0 .. n_gen-1), so the later genes refine the earlier ones. A chromosome
holds the gene blocks of all parameters back to back.

Islands evolve independently, each with its own random stream spawned from
``config.seed``, and exchange chromosomes only at epoch barriers. Results do
not depend on ``n_workers``.

``search`` chains ``run`` calls that restart the islands around the best point
with ever narrower ranges.
"""

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Optional

import numpy as np
import numpy.typing as npt
from pydantic import ValidationError

from ehmin.models.domain import RealArray
from ehmin.models.errors import BadLength, InvalidConfig, LengthMismatch
from ehmin.models.schemas import GAConfig, OptimizationReport, StopReason, TraceRecord

logger = logging.getLogger(__name__)

Fitness = Callable[[RealArray], Any]


def build_config(**overrides: Any) -> GAConfig:
    """GAConfig from keyword overrides; unset (None) values keep their defaults"""
    values = {key: value for key, value in overrides.items() if value is not None}
    try:
        return GAConfig(**values)
    except ValidationError as e:
        raise InvalidConfig(str(e)) from e


# -------- ENCODING --------
def gene_weights(n_gen: int) -> RealArray:
    return 10.0 ** -np.arange(n_gen, dtype=np.float64)


def decode_many(chromosomes: npt.ArrayLike, n_gen: int) -> RealArray:
    """(..., n_gen * k) genes -> (..., k) parameters"""
    genes = np.asarray(chromosomes, dtype=np.float64)
    if genes.shape[-1] % n_gen:
        raise BadLength(
            f"chromosome length {genes.shape[-1]} is not a multiple of {n_gen}"
        )
    blocks = genes.reshape(genes.shape[:-1] + (-1, n_gen))
    return blocks @ gene_weights(n_gen)


def decode(c: npt.ArrayLike, n_gen: int) -> RealArray:
    c = np.asarray(c, dtype=np.float64)
    if c.ndim != 1:
        raise BadLength("expected a single chromosome")
    return decode_many(c, n_gen)


def encode(x: npt.ArrayLike, n_gen: int) -> RealArray:
    """A chromosome that decodes exactly to x (leading gene = x, the rest zero)"""
    x = np.asarray(x, dtype=np.float64)
    genes = np.zeros(x.shape + (n_gen,), dtype=np.float64)
    genes[..., 0] = x
    return genes.reshape(x.shape[:-1] + (-1,))


# -------- OPERATORS --------
def mutate(
    c: npt.ArrayLike, p_mut: float, m_mut: float, rng: np.random.Generator
) -> RealArray:
    """Shift each gene by U[-m_mut, m_mut] with probability p_mut"""
    c = np.asarray(c, dtype=np.float64)
    hit = rng.random(c.shape) < p_mut
    xi = rng.uniform(-m_mut, m_mut, c.shape)
    return np.where(hit, c + xi, c)


def crossover(
    c1: npt.ArrayLike, c2: npt.ArrayLike, rng: np.random.Generator
) -> RealArray:
    """Uniform crossover: every gene comes from either parent with probability 1/2"""
    c1 = np.asarray(c1, dtype=np.float64)
    c2 = np.asarray(c2, dtype=np.float64)
    if c1.shape != c2.shape:
        raise LengthMismatch(f"parents differ in shape: {c1.shape} vs {c2.shape}")
    return np.where(rng.random(c1.shape) < 0.5, c1, c2)


def epoch(
    population: npt.ArrayLike,
    scores: npt.ArrayLike,
    config: GAConfig,
    rng: np.random.Generator,
) -> RealArray:
    """One generation: tournament pairs from the best n_population - n_bad,
    uniform crossover of the two winners, then mutation.

    With elitism the best chromosome is carried over unmutated in slot 0. The
    mutation rate comes from ``config.mutation_rate`` for the chromosome length.
    """
    population = np.asarray(population, dtype=np.float64)
    scores = np.asarray(scores, dtype=np.float64)
    if population.shape[0] != config.n_population or scores.shape != (
        config.n_population,
    ):
        raise InvalidConfig(
            f"population of {population.shape[0]} with {scores.size} scores "
            f"does not match n_population={config.n_population}"
        )

    # ranked[0] is the best; ties keep their original order
    ranked = population[np.argsort(scores, kind="stable")]
    n_elite = 1 if config.elitism else 0
    n_children = config.n_population - n_elite

    # the lower rank of a pair is its winner
    picks = rng.integers(0, config.n_population - config.n_bad, size=(n_children, 4))
    first = ranked[np.minimum(picks[:, 0], picks[:, 1])]
    second = ranked[np.minimum(picks[:, 2], picks[:, 3])]
    p_mut = config.mutation_rate(population.shape[1])
    children = mutate(crossover(first, second, rng), p_mut, config.m_mut, rng)

    if n_elite:
        return np.concatenate([ranked[:1], children])
    return children


# -------- ISLAND MODEL --------
def _evaluate(
    fitness: Fitness, genes: RealArray, n_gen: int, vectorized: bool
) -> RealArray:
    params = decode_many(genes, n_gen)
    if vectorized:
        return np.asarray(fitness(params), dtype=np.float64).reshape(len(params))
    return np.array([fitness(x) for x in params], dtype=np.float64)


def _migrate(
    populations: list[RealArray],
    scores: list[RealArray],
    p_mig: float,
    rng: np.random.Generator,
) -> int:
    """Best of a source island overwrites the worst of a random other island"""
    n_islands = len(populations)
    moved = 0
    for source in range(n_islands):
        draw = rng.random()
        if n_islands < 2 or draw >= p_mig:
            continue
        target = int(rng.integers(n_islands - 1))
        if target >= source:
            target += 1
        best = int(np.argmin(scores[source]))
        worst = int(np.argmax(scores[target]))
        populations[target][worst] = populations[source][best]
        scores[target][worst] = scores[source][best]
        moved += 1
    return moved


def _records(epoch_index: int, scores: list[RealArray]) -> list[TraceRecord]:
    return [
        TraceRecord(
            epoch=epoch_index,
            island=i,
            best=float(np.min(island_scores)),
            mean=float(np.mean(island_scores)),
        )
        for i, island_scores in enumerate(scores)
    ]


def run(
    fitness: Fitness,
    arity: int,
    config: GAConfig,
    vectorized: bool = False,
    initial: Optional[npt.ArrayLike] = None,
    center: Optional[npt.ArrayLike] = None,
    round_index: int = 0,
) -> OptimizationReport:
    """Minimize ``fitness`` over R^arity.

    ``fitness`` maps one parameter vector to a score, or a (m, arity) batch to
    m scores when ``vectorized`` is set. ``initial`` parameter vectors are
    seeded into the first slots of island 0. Genes start uniform within
    m_init of ``center`` (the origin by default). ``round_index`` selects an
    independent family of random streams for the same seed.
    """
    if arity < 1:
        raise InvalidConfig(f"arity must be positive, got {arity}")
    n_pop, n_gen = config.n_population, config.n_gen
    length = arity * n_gen

    root = np.random.SeedSequence(config.seed, spawn_key=(round_index,))
    streams = root.spawn(config.n_islands + 1)
    rngs = [np.random.default_rng(stream) for stream in streams[:-1]]
    migration_rng = np.random.default_rng(streams[-1])

    origin = np.zeros(length)
    if center is not None:
        point = np.asarray(center, dtype=np.float64)
        if point.shape != (arity,):
            raise InvalidConfig(f"center of shape {point.shape} does not fit")
        origin = encode(point, n_gen)
    populations = [
        origin + rng.uniform(-config.m_init, config.m_init, (n_pop, length))
        for rng in rngs
    ]
    if initial is not None:
        seeds = np.atleast_2d(np.asarray(initial, dtype=np.float64))
        if seeds.shape[-1] != arity or seeds.shape[0] > n_pop:
            raise InvalidConfig(f"initial points of shape {seeds.shape} do not fit")
        populations[0][: seeds.shape[0]] = encode(seeds, n_gen)

    logger.info(
        "GA start: arity=%d islands=%d population=%d seed=%d round=%d",
        arity,
        config.n_islands,
        n_pop,
        config.seed,
        round_index,
    )

    pool = ThreadPoolExecutor(config.n_workers) if config.n_workers > 1 else None

    def island_map(step: Callable[[int], Any]) -> list[Any]:
        indices = range(config.n_islands)
        return list(pool.map(step, indices)) if pool else [step(i) for i in indices]

    try:
        scores = island_map(
            lambda i: _evaluate(fitness, populations[i], n_gen, vectorized)
        )
        evaluations = config.n_islands * n_pop
        trace = _records(0, scores)
        history = [min(float(np.min(s)) for s in scores)]
        stop_reason = StopReason.max_epochs
        epochs_run = 0

        def evolve(i: int) -> tuple[RealArray, RealArray]:
            genes = epoch(populations[i], scores[i], config, rngs[i])
            return genes, _evaluate(fitness, genes, n_gen, vectorized)

        for epoch_index in range(1, config.n_epochs + 1):
            populations, scores = map(list, zip(*island_map(evolve)))
            evaluations += config.n_islands * n_pop
            moved = _migrate(populations, scores, config.p_mig, migration_rng)

            records = _records(epoch_index, scores)
            trace.extend(records)
            history.append(min(record.best for record in records))
            epochs_run = epoch_index
            logger.debug(
                "epoch %d: best=%.10f migrations=%d", epoch_index, history[-1], moved
            )

            window = history[-config.n_term :]
            stagnant = max(window) - min(window) < config.epsilon
            if len(window) == config.n_term and stagnant:
                stop_reason = StopReason.stagnation
                break
    finally:
        if pool:
            pool.shutdown()

    best_island = int(np.argmin([np.min(s) for s in scores]))
    best_index = int(np.argmin(scores[best_island]))
    best_genes = populations[best_island][best_index]
    best_value = float(scores[best_island][best_index])

    logger.info(
        "GA done: value=%.10f epochs=%d evaluations=%d stop=%s",
        best_value,
        epochs_run,
        evaluations,
        stop_reason.value,
    )
    return OptimizationReport(
        best_value=best_value,
        best_params=decode(best_genes, n_gen).tolist(),
        best_genes=best_genes.tolist(),
        epochs=epochs_run,
        evaluations=evaluations,
        n_islands=config.n_islands,
        seed=config.seed,
        stop_reason=stop_reason,
        trace=trace,
    )


# -------- REFINEMENT ROUNDS --------
def _merge(first: OptimizationReport, second: OptimizationReport) -> OptimizationReport:
    """Concatenate two consecutive runs; the restart of ``second`` counts as an epoch"""
    offset = first.epochs + 1
    trace = first.trace + [
        record.model_copy(update={"epoch": record.epoch + offset})
        for record in second.trace
    ]
    best = second if second.best_value <= first.best_value else first
    return OptimizationReport(
        best_value=best.best_value,
        best_params=best.best_params,
        best_genes=best.best_genes,
        epochs=first.epochs + second.epochs + 1,
        evaluations=first.evaluations + second.evaluations,
        n_islands=first.n_islands,
        seed=first.seed,
        stop_reason=second.stop_reason,
        trace=trace,
    )


def search(
    fitness: Fitness,
    arity: int,
    config: GAConfig,
    vectorized: bool = False,
    initial: Optional[npt.ArrayLike] = None,
) -> OptimizationReport:
    """``run`` followed by ``config.n_rounds - 1`` refinement rounds.

    Round r restarts every island around the best point so far with m_init and
    m_mut multiplied by shrink^r. The best point is seeded into each round.
    """
    report = run(fitness, arity, config, vectorized, initial)
    for index in range(1, config.n_rounds):
        scale = config.shrink**index
        narrowed = config.model_copy(
            update={"m_init": config.m_init * scale, "m_mut": config.m_mut * scale}
        )
        logger.info(
            "refinement round %d from %.10f (m_init=%.3g)",
            index,
            report.best_value,
            narrowed.m_init,
        )
        refined = run(
            fitness,
            arity,
            narrowed,
            vectorized,
            initial=[report.best_params],
            center=report.best_params,
            round_index=index,
        )
        report = _merge(report, refined)
    return report
