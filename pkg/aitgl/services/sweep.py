"""
Runs independent experiment instances, in worker processes when jobs > 1
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from aitgl.models.experiment import Player
from aitgl.services.game_engine import GameTrace, play
from aitgl.services.players import AliceStrategy, build_bob
from aitgl.utils.logger import logger

P = TypeVar("P")
R = TypeVar("R")


def run_sweep(fn: Callable[[P], R], params: Sequence[P], jobs: int = 1) -> List[R]:
    """fn over params; results come back in input order"""
    if jobs <= 1 or len(params) <= 1:
        return [fn(p) for p in params]
    workers = min(jobs, len(params))
    logger.info(f"Running {len(params)} instances on {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, params))


def play_instance(params: tuple) -> GameTrace:
    w, bob_spec, horizon, first, depth, budget = params
    return play(w, AliceStrategy(w), build_bob(bob_spec, budget=budget), horizon, first=first, depth=depth)


def play_sweep(
    ws: Sequence[int],
    bob_spec: str,
    horizon: int,
    jobs: int = 1,
    first: Player = Player.ALICE,
    depth: Optional[int] = None,
    budget: Optional[int] = None,
) -> List[GameTrace]:
    """One game per w against fresh copies of the same Bob"""
    return run_sweep(play_instance, [(w, bob_spec, horizon, first, depth, budget) for w in ws], jobs)
