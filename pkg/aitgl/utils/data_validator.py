"""
Validation of command-line values and string inputs
"""

import re
from typing import Optional, Tuple

from aitgl.exceptions import UsageError
from aitgl.utils.logger import logger

BIT_STRING = re.compile(r"^[01]*$")
BOB_SPEC = re.compile(r"^(pass|copycat|chaser|blind:\d+|random:-?\d+|script:[01,]*|file:.+)$")
ORDER_SPEC = re.compile(r"^(shortlex|file|shuffle:-?\d+)$")
SEQUENCE_SPEC = re.compile(r"^(zeros|ones|alt|game-trace:.+)$")
ROOT_ALIASES = {"Λ", "λ", "-"}


class DataValidator:
    """Validates and normalizes workbench inputs"""

    @staticmethod
    def clean_bitstring(raw: str, flag: Optional[str] = None) -> str:
        """Strip whitespace and map the root aliases to the empty string"""
        value = raw.strip()
        if value in ROOT_ALIASES:
            return ""
        if not BIT_STRING.match(value):
            raise UsageError(f"{raw!r} is not a bit string", flag)
        return value

    @staticmethod
    def validate_bob_spec(spec: str) -> str:
        spec = spec.strip()
        if not BOB_SPEC.match(spec):
            raise UsageError(
                f"expected pass|copycat|chaser|blind:F|random:SEED|script:a,b|file:PATH, got {spec!r}", "--bob"
            )
        return spec

    @staticmethod
    def validate_order_spec(spec: str) -> Tuple[str, Optional[int]]:
        """('shortlex' | 'file' | 'shuffle', seed)"""
        spec = spec.strip()
        if not ORDER_SPEC.match(spec):
            raise UsageError(f"expected shortlex|file|shuffle:SEED, got {spec!r}", "--order")
        kind, _, seed = spec.partition(":")
        return kind, int(seed) if seed else None

    @staticmethod
    def validate_sequence_spec(spec: str) -> str:
        spec = spec.strip()
        if not SEQUENCE_SPEC.match(spec):
            raise UsageError(f"expected zeros|ones|alt|game-trace:FILE, got {spec!r}", "--seq")
        return spec

    @staticmethod
    def validate_window(n_lo: int, n_hi: int) -> Tuple[int, int]:
        if n_lo > n_hi:
            raise UsageError(f"window [{n_lo}, {n_hi}] is empty", "--n-lo")
        if n_hi - n_lo > 100_000:
            logger.warning(f"Window [{n_lo}, {n_hi}] is wide; estimates may be slow")
        return n_lo, n_hi
