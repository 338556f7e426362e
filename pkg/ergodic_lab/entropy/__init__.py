from ergodic_lab.entropy.block import block_entropy, entropy_bracket, entropy_rate_table
from ergodic_lab.entropy.closed_form import binary_entropy, closed_form_entropy, entropy_target

__all__ = [
    "binary_entropy",
    "block_entropy",
    "closed_form_entropy",
    "entropy_bracket",
    "entropy_rate_table",
    "entropy_target",
]
