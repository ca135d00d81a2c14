from .engine import apply_mutation, generate_mutants, mutant_records
from .operators import OPERATORS, MutationOperator
