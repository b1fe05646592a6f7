"""semigroup/semigroup.py - Public interface, re-exports words and generator systems."""
from semigroup.semigroup_core.generator_system import (AbelianEvidence, GeneratorSystem, abelian_evidence,
    apply_word, apply_word_points, check_abelian_sampled, is_forward_invariant_sampled, iter_extensions,
    orbit_points, sample_phase_space, word_box_image, word_box_images)
from semigroup.semigroup_core.words import (IDENTITY, Word, enumerate_words, expand_schedule, format_word,
    parse_word, words_of_length)

__all__ = ["AbelianEvidence", "GeneratorSystem", "abelian_evidence", "apply_word", "apply_word_points",
           "check_abelian_sampled", "is_forward_invariant_sampled", "iter_extensions", "orbit_points",
           "sample_phase_space", "word_box_image", "word_box_images", "IDENTITY", "Word", "enumerate_words",
           "expand_schedule", "format_word", "parse_word", "words_of_length"]
