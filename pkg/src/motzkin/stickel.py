"""Stickel-style key exchange over Mo_n.

A toy: both sides publish g^a h^a' and combine the other side's value with
their own exponents.  Nothing here is meant to be secure; the statistics
helpers exist to show how small the reachable key space is.
"""
from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass

from .diagram import Diagram, generator, identity, power, power_period, product

DEFAULT_BOUND = 32


@dataclass(frozen=True)
class StickelParams:
    n: int
    g: Diagram
    h: Diagram
    bound: int = DEFAULT_BOUND

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("exponent bound must be at least 1")
        for name, d in (("g", self.g), ("h", self.h)):
            if d.n != self.n:
                raise ValueError(f"{name} lives in Mo_{d.n}, not Mo_{self.n}")
            if d == identity(self.n):
                raise ValueError(f"{name} is a unit; the exchange degenerates")


@dataclass(frozen=True)
class KeyMaterial:
    a: int
    a2: int
    public: Diagram


def _random_word(n: int, rng: random.Random, length: int) -> Diagram:
    d = identity(n)
    for _ in range(length):
        d = product(d, generator(n, rng.choice("ltr"), rng.randint(1, n - 1)))
    return d


def default_params(n: int = 5, seed: int = 0, bound: int = DEFAULT_BOUND, word_length: int = 4) -> StickelParams:
    """g and h as seeded random words in the generators.

    Units are never picked; idempotents are skipped too when possible, since
    their powers are constant and the exchange collapses to one key.
    """
    if n < 2:
        raise ValueError("need n >= 2 for non-unit generators")
    rng = random.Random(f"stickel-params:{n}:{seed}")
    picks = []
    attempts = 0
    while len(picks) < 2:
        attempts += 1
        d = _random_word(n, rng, word_length)
        if d == identity(n) or d in picks:
            continue
        if attempts < 200 and product(d, d) == d:
            continue
        picks.append(d)
    return StickelParams(n, picks[0], picks[1], bound)


def keygen(params: StickelParams, seed, a: int | None = None, a2: int | None = None) -> KeyMaterial:
    rng = random.Random(f"stickel-key:{seed}")
    if a is None:
        a = rng.randint(1, params.bound)
    if a2 is None:
        a2 = rng.randint(1, params.bound)
    if a < 1 or a2 < 1:
        raise ValueError("exponents must be positive")
    public = product(power(params.g, a), power(params.h, a2))
    return KeyMaterial(a, a2, public)


def shared_key(mine: KeyMaterial, their_public: Diagram, params: StickelParams) -> Diagram:
    if their_public.n != params.n:
        raise ValueError(f"public value lives in Mo_{their_public.n}, not Mo_{params.n}")
    left = power(params.g, mine.a)
    right = power(params.h, mine.a2)
    return product(product(left, their_public), right)


def key_hash(d: Diagram) -> str:
    return hashlib.sha256(str(d).encode()).hexdigest()


@dataclass(frozen=True)
class Trial:
    alice: KeyMaterial
    bob: KeyMaterial
    key_a: Diagram
    key_b: Diagram

    @property
    def agree(self) -> bool:
        return self.key_a == self.key_b


def run_trial(params: StickelParams, seed) -> Trial:
    alice = keygen(params, f"{seed}:A")
    bob = keygen(params, f"{seed}:B")
    return Trial(alice, bob,
                 shared_key(alice, bob.public, params),
                 shared_key(bob, alice.public, params))


def transcript(params: StickelParams, seed) -> dict:
    t = run_trial(params, seed)
    return {
        "n": params.n,
        "bound": params.bound,
        "g": str(params.g),
        "h": str(params.h),
        "alice_public": str(t.alice.public),
        "bob_public": str(t.bob.public),
        "agree": t.agree,
        "key_sha256": key_hash(t.key_a),
    }


def transcript_hash(params: StickelParams, seed) -> str:
    body = json.dumps(transcript(params, seed), sort_keys=True).encode()
    return hashlib.sha256(body).hexdigest()


def key_statistics(params: StickelParams, trials: int, seed=0) -> dict:
    keys = set()
    agree = 0
    for i in range(trials):
        t = run_trial(params, f"{seed}:{i}")
        agree += t.agree
        keys.add(t.key_a)
    gi, gp = power_period(params.g)
    hi, hp = power_period(params.h)
    return {
        "trials": trials,
        "agree": agree,
        "distinct_keys": len(keys),
        "g_index": gi, "g_period": gp,
        "h_index": hi, "h_period": hp,
    }
