"""Exceptional prime p-tuples: construction, verification, repeat hunts and progression runs."""

from .constructor import PrimeTuple, enumerate_walks, extend_left, greedy_construct, verify_tuple
from .corpus import load_corpus, verify_all
from .hunter import RepeatSpec, derive_repeat_spec, search_occurrences, verify_bracketing
from .patterns import parse_pattern, render_pattern, stop_certificate, validate_exceptional
from .primecore import is_prime, sieve_window, smallest_prime_factor
from .progressions import ProgressionSpec, classify, enumerate_runs, max_run_oracle

__all__ = [
    "PrimeTuple", "enumerate_walks", "extend_left", "greedy_construct", "verify_tuple",
    "load_corpus", "verify_all",
    "RepeatSpec", "derive_repeat_spec", "search_occurrences", "verify_bracketing",
    "parse_pattern", "render_pattern", "stop_certificate", "validate_exceptional",
    "is_prime", "sieve_window", "smallest_prime_factor",
    "ProgressionSpec", "classify", "enumerate_runs", "max_run_oracle",
]
