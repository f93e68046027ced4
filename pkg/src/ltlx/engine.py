"""Executes rule sets over documents.

Traversal visits the document pre-order.  At each node, rules are tried
in source order; the first rule whose head unifies with the node and
whose goals succeed emits its instantiated output hedge, and the node's
subtree is not descended any further (the red cut — recursion happens
only through explicit template goals).  When no rule fires on an
element, its children are visited and their outputs concatenated; an
unmatched non-element node emits nothing.  Matching then continues with
the siblings of the matched node.

In the default first-solution mode a fired rule commits to the first
solution of its goal conjunction, and a transform goal commits to the
first result of its path.  In all-solutions mode the first matching
rule still wins, but every solution of its goals is enumerated and their
output hedges are concatenated, with transform goals offering each path
result as an alternative on backtracking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import InstantiationError, ShapeError, TypeMismatchError, UnboundOutputError
from .nodes import Element, Hedge, Node, Text
from .queryops import ALL_SOLUTIONS, FIRST_ONLY, Result, eval_path
from .rules import ApplyTemplates, Goal, Not, Rule, RuleSet, Transform, Unify
from .terms import (
    Int,
    Seq,
    Str,
    Substitution,
    Term,
    apply_subst,
    is_ground,
    node_to_term,
    term_to_node,
    unify,
)


def _result_to_term(result: Result) -> Term:
    if isinstance(result, str):
        return Str(result)
    if isinstance(result, int):
        return Int(result)
    if isinstance(result, tuple):
        return Seq(tuple(Int(k) for k in result))
    return node_to_term(result)


def _coerce_transform_result(result: Result, enabled: bool) -> Iterator[Result]:
    """An element result stands for its direct text children when coercion is on."""
    if enabled and isinstance(result, Element):
        for child in result.children:
            if isinstance(child, Text):
                yield child.content
    else:
        yield result


def _bound_node(theta: Substitution, term: Term, what: str) -> Node:
    grounded = apply_subst(theta, term)
    if not is_ground(grounded):
        raise InstantiationError(f"{what} is not fully bound: {grounded!r}")
    try:
        return term_to_node(grounded)
    except ShapeError:
        raise TypeMismatchError(f"{what} is not a node: {grounded!r}") from None


def solve_goals(
    rs: RuleSet, goals: tuple[Goal, ...], theta: Substitution, ctx: Node
) -> Iterator[Substitution]:
    """Solve a goal conjunction left to right, yielding extended substitutions.

    Unification goals extend the substitution or fail; transform goals
    evaluate their path against the node bound to the start variable;
    template goals recurse into apply_templates on the bound node and
    unify the produced hedge; not(g) succeeds exactly when g has no
    solution, discarding any bindings g would make.  `ctx` is the
    document the lvl step resolves index paths against.
    """
    if not goals:
        yield theta
        return
    goal, rest = goals[0], goals[1:]
    if isinstance(goal, Unify):
        delta = unify(apply_subst(theta, goal.lhs), apply_subst(theta, goal.rhs))
        if delta is not None:
            yield from solve_goals(rs, rest, theta.compose(delta), ctx)
    elif isinstance(goal, Transform):
        start = goal.path.start
        if start is None or start not in theta:
            raise InstantiationError(
                f"transform path start {start or '(implicit)'} is unbound"
            )
        node = _bound_node(theta, theta[start], f"transform path start {start}")
        results = eval_path(
            node,
            goal.path,
            mode=ALL_SOLUTIONS,
            coerce_text=rs.coerce_text,
            root=ctx,
        )
        flattened = (
            value
            for result in results
            for value in _coerce_transform_result(result, rs.coerce_text)
        )
        if rs.solution_mode == FIRST_ONLY:
            first = next(flattened, None)
            if first is None:
                return
            delta = unify(apply_subst(theta, goal.result), _result_to_term(first))
            if delta is not None:
                yield from solve_goals(rs, rest, theta.compose(delta), ctx)
        else:
            for value in flattened:
                delta = unify(apply_subst(theta, goal.result), _result_to_term(value))
                if delta is not None:
                    yield from solve_goals(rs, rest, theta.compose(delta), ctx)
    elif isinstance(goal, ApplyTemplates):
        node = _bound_node(theta, goal.node, "template goal node")
        hedge = tuple(_emit(rs, node, ctx))
        produced = Seq(tuple(node_to_term(n) for n in hedge))
        delta = unify(apply_subst(theta, goal.result), produced)
        if delta is not None:
            yield from solve_goals(rs, rest, theta.compose(delta), ctx)
    elif isinstance(goal, Not):
        for _ in solve_goals(rs, (goal.inner,), theta, ctx):
            return
        yield from solve_goals(rs, rest, theta, ctx)
    else:  # pragma: no cover - exhaustive over Goal
        raise TypeError(f"unknown goal {goal!r}")


def _instantiate_output(rule: Rule, theta: Substitution) -> Iterator[Node]:
    for template in rule.output:
        term = apply_subst(theta, template)
        try:
            yield term_to_node(term)
        except UnboundOutputError as exc:
            raise UnboundOutputError(exc.variable, rule.label) from None


def _emit(rs: RuleSet, node: Node, root: Node) -> Iterator[Node]:
    node_term = node_to_term(node)
    for rule in rs.rules:
        theta = unify(rule.head, node_term)
        if theta is None:
            continue
        if rs.solution_mode == FIRST_ONLY:
            solution = next(solve_goals(rs, rule.goals, theta, root), None)
            if solution is None:
                continue
            yield from _instantiate_output(rule, solution)
            return
        fired = False
        for solution in solve_goals(rs, rule.goals, theta, root):
            fired = True
            yield from _instantiate_output(rule, solution)
        if fired:
            return
    if isinstance(node, Element):
        for child in node.children:
            yield from _emit(rs, child, root)
    elif rs.default_copy_text and isinstance(node, Text):
        yield node


def apply_templates(rs: RuleSet, node: Node) -> Hedge:
    """Transform `node` under the rule set, returning the output hedge."""
    return tuple(_emit(rs, node, node))


@dataclass(frozen=True)
class TransformResult:
    """Output hedge plus whether it forms a well-formed document on its own."""

    nodes: Hedge
    well_formed: bool

    @property
    def root(self) -> Node | None:
        return self.nodes[0] if self.well_formed else None


def transform_document(rs: RuleSet, doc: Node) -> TransformResult:
    """Run apply_templates on a parsed root element.

    The result is well-formed exactly when the output hedge is a single
    element; any other hedge (empty, multiple nodes, or a non-element) is
    still returned, flagged as not well-formed.
    """
    if not isinstance(doc, Element):
        raise TypeMismatchError("transformation input must be a root element")
    hedge = apply_templates(rs, doc)
    well_formed = len(hedge) == 1 and isinstance(hedge[0], Element)
    return TransformResult(hedge, well_formed)
