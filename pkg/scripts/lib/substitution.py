# scripts/lib/substitution.py
"""Substitution words over {a, b} and the rotation-angle schedules they drive.

Built-in rules (all prefix-stable from the seed letter ``a``):

    qf  Fibonacci        a -> ab, b -> a
    tm  Thue-Morse       a -> ab, b -> ba
    pd  period-doubling  a -> ab, b -> aa

An AngleSchedule turns a word into angles (letter a -> alpha1, b -> alpha2),
holds a constant angle (regular drive), or follows the chaotic Fibonacci
recursion alpha_{m+1} = alpha_m + alpha_{m-1}.
"""
import dataclasses
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from config import DEFAULT_REDUCTION, LOG_LEVEL, MAX_WORD_LENGTH
from .errors import CapacityError, ConfigError

# Configure basic logging
logger = logging.getLogger(__name__)
if not logger.handlers:
    logging.basicConfig(level=getattr(logging, LOG_LEVEL.upper(), logging.INFO),
                        format='%(asctime)s - %(levelname)s - %(module)s - %(message)s')

TWO_PI = 2.0 * math.pi
ALPHABET = ("a", "b")
GOLDEN_MEAN = (math.sqrt(5.0) - 1.0) / 2.0

# Documentation only: the growth rate ln((1 + sqrt 5)/2) of the chaotic Fibonacci rule.
CHAOTIC_LYAPUNOV_EXPONENT = math.log((1.0 + math.sqrt(5.0)) / 2.0)

SCHEDULE_KINDS = ("regular", "substitution", "chaotic_fibonacci")
REDUCTIONS = ("mod_2pi", "none")


@dataclass(frozen=True)
class SubstitutionRule:
    image_of_a: str
    image_of_b: str
    name: str = "custom"

    def __post_init__(self):
        for letter, image in (("a", self.image_of_a), ("b", self.image_of_b)):
            if not image:
                raise ConfigError(f"Image of '{letter}' in rule '{self.name}' must be non-empty.")
            if set(image) - set(ALPHABET):
                raise ConfigError(f"Image of '{letter}' in rule '{self.name}' uses letters outside {{a,b}}: '{image}'.")

    @property
    def table(self):
        return str.maketrans({"a": self.image_of_a, "b": self.image_of_b})

    @property
    def is_prefix_stable(self) -> bool:
        """True if iterating on ``a`` yields words that extend each other and grow."""
        return self.image_of_a.startswith("a") and len(self.image_of_a) >= 2


FIBONACCI = SubstitutionRule("ab", "a", "qf")
THUE_MORSE = SubstitutionRule("ab", "ba", "tm")
PERIOD_DOUBLING = SubstitutionRule("ab", "aa", "pd")

BUILTIN_RULES = {rule.name: rule for rule in (FIBONACCI, THUE_MORSE, PERIOD_DOUBLING)}


def get_rule(name: str) -> SubstitutionRule:
    rule = BUILTIN_RULES.get(name)
    if rule is None:
        raise ConfigError(f"Unknown substitution rule '{name}'. Known rules: {', '.join(BUILTIN_RULES)}.")
    return rule


def _check_word(word: str, what: str):
    if not word:
        raise ConfigError(f"{what} must be a non-empty word.")
    if set(word) - set(ALPHABET):
        raise ConfigError(f"{what} '{word}' uses letters outside {{a,b}}.")


def expand_rule(rule: SubstitutionRule, seed: str, iterations: int, max_length: int = MAX_WORD_LENGTH) -> str:
    """
    Applies the substitution letterwise ``iterations`` times to ``seed``.

    Args:
        rule (SubstitutionRule): The rule xi.
        seed (str): Non-empty word over {a, b}.
        iterations (int): Number of applications, >= 0.
        max_length (int): Capacity; a word growing beyond it is rejected.

    Returns:
        str: xi^iterations(seed).

    Raises:
        CapacityError: if an iterate exceeds ``max_length`` letters.
    """
    _check_word(seed, "Seed")
    if iterations < 0:
        raise ConfigError(f"Iterations must be >= 0, got {iterations}.")

    word = seed
    table = rule.table
    for i in range(iterations):
        word = word.translate(table)
        if len(word) > max_length:
            raise CapacityError(f"Rule '{rule.name}' word reached {len(word)} letters after {i + 1} iterations, "
                                f"above the configured maximum of {max_length}.")
    logger.debug(f"Expanded rule '{rule.name}' on '{seed}' {iterations} times: {len(word)} letters.")
    return word


@dataclass(frozen=True)
class LetterSequence:
    """Length-prefix of the fixed point of ``rule`` seeded by ``a``."""
    letters: str
    rule: SubstitutionRule

    @property
    def length(self) -> int:
        return len(self.letters)

    def b_mask(self, count: int) -> np.ndarray:
        """Boolean array, True where one of the first ``count`` letters is ``b``."""
        if count > self.length:
            raise CapacityError(f"Requested {count} letters but the '{self.rule.name}' sequence holds {self.length}.")
        codes = np.frombuffer(self.letters[:count].encode("ascii"), dtype=np.uint8)
        return codes == ord("b")


def generate_letters(rule: SubstitutionRule, length: int, max_length: int = MAX_WORD_LENGTH) -> LetterSequence:
    """Builds the first ``length`` letters by repeated substitution from ``a``, then truncates."""
    if length < 1:
        raise ConfigError(f"Sequence length must be >= 1, got {length}.")
    if length > max_length:
        raise CapacityError(f"Requested {length} letters, above the configured maximum of {max_length}.")
    if not rule.is_prefix_stable:
        raise ConfigError(f"Rule '{rule.name}' is not prefix-stable from seed 'a' "
                          f"(image of a = '{rule.image_of_a}'); cannot extract a prefix.")

    word = "a"
    table = rule.table
    while len(word) < length:
        word = word.translate(table)
    return LetterSequence(word[:length], rule)


def letter_frequency(seq: LetterSequence, letter: str) -> float:
    if letter not in ALPHABET:
        raise ConfigError(f"Letter must be 'a' or 'b', got '{letter}'.")
    if seq.length == 0:
        raise ConfigError("Letter frequency of an empty sequence is undefined.")
    return seq.letters.count(letter) / seq.length


def reduce_angle(angle: float, reduction: str) -> float:
    """Maps an angle into [0, 2 pi) for ``mod_2pi``; returns it unchanged for ``none``."""
    if reduction == "none":
        return angle
    r = math.fmod(angle, TWO_PI)
    if r < 0.0:
        r += TWO_PI
    if r >= TWO_PI:
        r = 0.0
    return r


# (alpha1, alpha2, reduction) -> longest angle array built so far
_CHAOTIC_CACHE = {}
_CHAOTIC_CACHE_SIZE = 16


def _chaotic_angles(alpha1: float, alpha2: float, reduction: str, count: int) -> np.ndarray:
    """First ``count`` angles of the chaotic rule; a read-only slice of the cached array."""
    key = (alpha1, alpha2, reduction)
    cached = _CHAOTIC_CACHE.get(key)
    if cached is None or len(cached) < count:
        have = 0 if cached is None else len(cached)
        # grows at least geometrically
        out = np.empty(max(count, 2 * have, 2), dtype=np.float64)
        if cached is not None:
            out[:have] = cached
        if have < 2:
            out[0] = reduce_angle(alpha1, reduction)
            out[1] = reduce_angle(alpha2, reduction)
            have = 2
        prev, cur = float(out[have - 2]), float(out[have - 1])
        for i in range(have, len(out)):
            prev, cur = cur, reduce_angle(prev + cur, reduction)
            out[i] = cur
        out.flags.writeable = False
        _CHAOTIC_CACHE.pop(key, None)
        if len(_CHAOTIC_CACHE) >= _CHAOTIC_CACHE_SIZE:
            _CHAOTIC_CACHE.pop(next(iter(_CHAOTIC_CACHE)))
        _CHAOTIC_CACHE[key] = cached = out
    return cached[:count]


@dataclass(frozen=True)
class AngleSchedule:
    """Rule producing the head rotation angle alpha_m for every odd step 2m-1."""
    kind: str
    alpha1: float
    alpha2: float
    letters: Optional[LetterSequence] = None
    reduction: str = DEFAULT_REDUCTION

    def __post_init__(self):
        if self.kind not in SCHEDULE_KINDS:
            raise ConfigError(f"Unknown schedule kind '{self.kind}'. Expected one of {SCHEDULE_KINDS}.")
        if not (math.isfinite(self.alpha1) and math.isfinite(self.alpha2)):
            raise ConfigError(f"Schedule angles must be finite, got alpha1={self.alpha1}, alpha2={self.alpha2}.")
        if self.reduction not in REDUCTIONS:
            raise ConfigError(f"Unknown reduction '{self.reduction}'. Expected one of {REDUCTIONS}.")
        if self.kind == "substitution" and self.letters is None:
            raise ConfigError("A substitution schedule needs a letter sequence.")

    @classmethod
    def regular(cls, alpha: float) -> "AngleSchedule":
        return cls("regular", alpha, alpha)

    @classmethod
    def substitution(cls, rule: SubstitutionRule, alpha1: float, alpha2: float, length: int) -> "AngleSchedule":
        return cls("substitution", alpha1, alpha2, letters=generate_letters(rule, max(length, 1)))

    @classmethod
    def chaotic_fibonacci(cls, alpha1: float, alpha2: float, reduction: str = DEFAULT_REDUCTION) -> "AngleSchedule":
        return cls("chaotic_fibonacci", alpha1, alpha2, reduction=reduction)

    @property
    def name(self) -> str:
        if self.kind == "substitution":
            return self.letters.rule.name
        return "cf" if self.kind == "chaotic_fibonacci" else "regular"

    @property
    def capacity(self) -> Optional[int]:
        """Number of angles available, or None when unlimited."""
        return self.letters.length if self.kind == "substitution" else None

    def angles(self, count: int) -> np.ndarray:
        """Read-only array of alpha_1 .. alpha_count."""
        if count < 0:
            raise ConfigError(f"Angle count must be >= 0, got {count}.")
        if self.kind == "regular":
            return np.full(count, self.alpha1, dtype=np.float64)
        if self.kind == "substitution":
            return np.where(self.letters.b_mask(count), self.alpha2, self.alpha1)
        return _chaotic_angles(self.alpha1, self.alpha2, self.reduction, count)

    def with_offsets(self, delta1: float, delta2: float) -> "AngleSchedule":
        """Same drive with alpha1 + delta1 and alpha2 + delta2 (recursion seeds for the chaotic rule)."""
        if self.kind == "regular":
            return dataclasses.replace(self, alpha1=self.alpha1 + delta1, alpha2=self.alpha2 + delta1)
        return dataclasses.replace(self, alpha1=self.alpha1 + delta1, alpha2=self.alpha2 + delta2)


def schedule_angle(s: AngleSchedule, m: int) -> float:
    """alpha_m of schedule ``s`` for m >= 1."""
    if m < 1:
        raise ConfigError(f"Schedule index must be >= 1, got {m}.")
    if s.kind == "regular":
        return s.alpha1
    if s.kind == "substitution":
        if m > s.letters.length:
            raise CapacityError(f"Step index {m} exceeds the {s.letters.length} available '{s.name}' letters.")
        return s.alpha2 if s.letters.letters[m - 1] == "b" else s.alpha1
    return float(_chaotic_angles(s.alpha1, s.alpha2, s.reduction, m)[m - 1])


def rotations_needed(n_steps: int) -> int:
    """Number of head rotations among network steps 1..n_steps (odd steps)."""
    return (n_steps + 1) // 2


def schedule_from_name(name: str, alpha1: float, alpha2: float, n_steps: int,
                       reduction: str = DEFAULT_REDUCTION) -> AngleSchedule:
    """
    Builds the schedule a run of ``n_steps`` network steps needs.

    Args:
        name (str): "regular", "qf", "tm", "pd" or "cf".
        alpha1 (float): First angle in radians (the constant angle for "regular").
        alpha2 (float): Second angle in radians; ignored by "regular".
        n_steps (int): Network steps; substitution words get ceil(n_steps/2) letters.
        reduction (str): Reduction of the chaotic rule.
    """
    if name == "regular":
        return AngleSchedule.regular(alpha1)
    if name == "cf":
        return AngleSchedule.chaotic_fibonacci(alpha1, alpha2, reduction)
    return AngleSchedule.substitution(get_rule(name), alpha1, alpha2, rotations_needed(n_steps))


if __name__ == "__main__":
    logger.info("Testing substitution.py...")
    for rule in BUILTIN_RULES.values():
        logger.info(f"{rule.name}: {expand_rule(rule, 'a', 4)}")
    seq = generate_letters(FIBONACCI, 10946)
    logger.info(f"qf a-frequency at 10946 letters: {letter_frequency(seq, 'a'):.6f} (golden mean {GOLDEN_MEAN:.6f})")
