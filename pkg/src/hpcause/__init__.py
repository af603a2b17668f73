"""Weak causes, actual causes and explanations in finite recursive causal models."""
from .decomposition import (Decomposition, DecompositionReport, is_weak_cause_decomposed,
                            trivial_decomposition, validate_decomposition)
from .events import And, EventSyntaxError, Not, Prim, parse_event, render
from .explain import (ContextSet, ExplanationVerdict, UndefinedPower, explanatory_power, is_alpha_partial,
                      is_explanation, is_partial, largest_explaining_subset)
from .generate import GeneratorConfig, generate_instance, generate_model
from .graph import CausalGraph, WorkCounter, causal_graph, endogenous_graph
from .io import load_contexts, load_model, save_contexts, save_model
from .layered import Layering, detect_layered, is_weak_cause_layered, natural_decomposition
from .model import CausalModel, Mechanism, ModelError, NotApplicable
from .oracle import (OracleCapExceeded, Witness, enumerate_causes, is_actual_cause,
                     weak_cause_bruteforce)
from .reduction import Relevance, classify_relevance, reduce_model, strip_blocked, strip_nonancestors
from .solve import Decision, decide_actual_cause, decide_weak_cause, weak_cause
from .tree import TreePath, detect_tree, is_weak_cause_tree

__version__ = "0.1.0"
