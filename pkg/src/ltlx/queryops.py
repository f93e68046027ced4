"""Query and manipulation operators over document nodes.

Navigation operators (/, //, @, id, #, ?, child, descendant, last,
count) are exposed both as standalone functions and as path steps that
chain into a path expression.  Failure of an operator is a normal
outcome: stream operators yield nothing and scalar operators return
None.  Errors are reserved for type misuse, such as asking a text node
for its children.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import BadIndexPathError, TypeMismatchError
from .nodes import Comment, Element, Node, PI, Text, document_order

IndexPath = tuple[int, ...]
Result = Union[Node, str, int, IndexPath]

FIRST_ONLY = "first"
ALL_SOLUTIONS = "all"


# --- path steps -------------------------------------------------------------


@dataclass(frozen=True)
class ChildNamed:
    name: str

    def __repr__(self) -> str:
        return f"/{self.name}"


@dataclass(frozen=True)
class DescendantOrSelfNamed:
    """Elements named `name` in the subtree including the context; None is the * wildcard."""

    name: str | None

    def __repr__(self) -> str:
        return f"//{self.name or '*'}"


@dataclass(frozen=True)
class AttrValue:
    name: str

    def __repr__(self) -> str:
        return f"@{self.name}"


@dataclass(frozen=True)
class AttrNameByValue:
    value: str

    def __repr__(self) -> str:
        return f'id("{self.value}")'


@dataclass(frozen=True)
class TextValue:
    def __repr__(self) -> str:
        return "#"


@dataclass(frozen=True)
class PIValue:
    def __repr__(self) -> str:
        return "?"


@dataclass(frozen=True)
class Children:
    def __repr__(self) -> str:
        return "child"


@dataclass(frozen=True)
class Descendants:
    def __repr__(self) -> str:
        return "descendant"


@dataclass(frozen=True)
class LastChild:
    def __repr__(self) -> str:
        return "last"


@dataclass(frozen=True)
class CountChildren:
    def __repr__(self) -> str:
        return "count"


@dataclass(frozen=True)
class Lvl:
    def __repr__(self) -> str:
        return "lvl"


@dataclass(frozen=True)
class Index:
    """Select the k-th item (1-based) of the incoming result stream."""

    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("index selector is 1-based")

    def __repr__(self) -> str:
        return f"#{self.k}"


Step = Union[
    ChildNamed,
    DescendantOrSelfNamed,
    AttrValue,
    AttrNameByValue,
    TextValue,
    PIValue,
    Children,
    Descendants,
    LastChild,
    CountChildren,
    Lvl,
    Index,
]


_VALUE_STEPS = (AttrValue, AttrNameByValue, TextValue, PIValue, CountChildren, Lvl)


@dataclass(frozen=True)
class PathExpr:
    """A chain of steps; `start` names the variable holding the context node
    (None when the context is implicit, as in CLI queries).

    Steps that produce non-node values terminate the path; only an Index
    selector may follow them.
    """

    start: str | None
    steps: tuple[Step, ...]

    def __post_init__(self) -> None:
        if not self.steps:
            raise ValueError("path expression needs at least one step")
        object.__setattr__(self, "steps", tuple(self.steps))
        for before, after in zip(self.steps, self.steps[1:]):
            if isinstance(before, _VALUE_STEPS) and not isinstance(after, Index):
                raise ValueError(
                    f"step {after!r} cannot follow the value-producing step {before!r}"
                )

    def __repr__(self) -> str:
        inner = "".join(
            (" " + repr(s)) if isinstance(s, (Children, Descendants, LastChild, CountChildren, Lvl)) else repr(s)
            for s in self.steps
        )
        return (self.start or "") + inner


# --- navigation operators ---------------------------------------------------


def _require_element(node: Node, op: str) -> Element:
    if not isinstance(node, Element):
        raise TypeMismatchError(f"{op} is only defined on elements, got {node!r}")
    return node


def child_by_name(node: Node, name: str) -> Iterator[Element]:
    """Direct child elements named `name`, in child order."""
    e = _require_element(node, "/")
    for child in e.children:
        if isinstance(child, Element) and child.name == name:
            yield child


def descendant_or_self_by_name(node: Node, name: str | None) -> Iterator[Element]:
    """Elements named `name` in the subtree rooted at `node`, itself included,
    in document order; `name=None` matches every element."""
    _require_element(node, "//")
    for item in document_order(node):
        if isinstance(item, Element) and (name is None or item.name == name):
            yield item


def attr_value(node: Node, name: str) -> str | None:
    """Value of the attribute named `name`; None (failure) when absent."""
    e = _require_element(node, "@")
    for attr in e.attributes:
        if attr.name == name:
            return attr.value
    return None


def attr_name_by_value(node: Node, value: str) -> Iterator[str]:
    """Names of all attributes whose value equals `value`, in attribute order."""
    e = _require_element(node, "id")
    for attr in e.attributes:
        if attr.value == value:
            yield attr.name


def text_value(node: Node) -> str | None:
    """Content of a text node; None on any other variant."""
    return node.content if isinstance(node, Text) else None


def pi_value(node: Node) -> str | None:
    """Content of a processing instruction; None on any other variant."""
    return node.content if isinstance(node, PI) else None


def children(node: Node) -> Iterator[Node]:
    """All children of every variant kind, in order."""
    e = _require_element(node, "child")
    yield from e.children


def descendants(node: Node) -> Iterator[Node]:
    """All proper descendants, document order; empty for leaves of any kind."""
    if isinstance(node, Element):
        for child in node.children:
            yield from document_order(child)


def last_child(node: Node) -> Node | None:
    """The final child; None when childless or not an element."""
    if isinstance(node, Element) and node.children:
        return node.children[-1]
    return None


def count_children(node: Node) -> int | None:
    """Number of children of an element; None on other variants."""
    return len(node.children) if isinstance(node, Element) else None


# --- index paths ------------------------------------------------------------


def follow_index_path(root: Node, path: Iterable[int]) -> Node:
    """Resolve a sequence of 1-based child indices from `root`."""
    node = root
    for i, k in enumerate(path):
        if not isinstance(node, Element):
            raise BadIndexPathError(f"index {k} descends into non-element at position {i}")
        if not 1 <= k <= len(node.children):
            raise BadIndexPathError(f"index {k} out of range at position {i}")
        node = node.children[k - 1]
    return node


def lvl(root: Node, target: Node) -> Iterator[IndexPath]:
    """Every index path leading from `root` to a node equal to `target`,
    in document order of the occurrences; [] when the root itself matches."""
    _require_element(root, "lvl")
    yield from _lvl(root, target, ())


def _lvl(node: Node, target: Node, prefix: IndexPath) -> Iterator[IndexPath]:
    if node == target:
        yield prefix
    if isinstance(node, Element):
        for i, child in enumerate(node.children, start=1):
            yield from _lvl(child, target, prefix + (i,))


@dataclass(frozen=True)
class Up:
    def __repr__(self) -> str:
        return "up"


@dataclass(frozen=True)
class Down:
    index: int

    def __repr__(self) -> str:
        return f"down({self.index})"


Move = Union[Up, Down]
UP = Up()


def reachable(root: Node, u_path: Iterable[int], v_path: Iterable[int]) -> list[Move]:
    """A move sequence from the node at `u_path` to the node at `v_path`:
    ascend to the longest common prefix, then descend the remainder of
    `v_path`.  Both paths must be valid in `root`."""
    u = tuple(u_path)
    v = tuple(v_path)
    follow_index_path(root, u)
    follow_index_path(root, v)
    common = 0
    while common < len(u) and common < len(v) and u[common] == v[common]:
        common += 1
    moves: list[Move] = [UP] * (len(u) - common)
    moves.extend(Down(k) for k in v[common:])
    return moves


# --- one-step manipulation --------------------------------------------------


def copy(node: Node) -> Node:
    """The node itself; values are immutable, so identity is a deep copy."""
    return node


def copy_of(node: Node) -> Element:
    """Same name and attributes, children dropped."""
    e = _require_element(node, "copy_of")
    return Element(e.name, e.attributes, ())


def rem_el(node: Node, name: str) -> Element | None:
    """Remove the first child element named `name`; None when there is none."""
    e = _require_element(node, "rem_el")
    for i, child in enumerate(e.children):
        if isinstance(child, Element) and child.name == name:
            return Element(e.name, e.attributes, e.children[:i] + e.children[i + 1 :])
    return None


def rem(node: Node, child: Node) -> Element | None:
    """Remove the first child structurally equal to `child`; None when absent."""
    e = _require_element(node, "rem")
    for i, existing in enumerate(e.children):
        if existing == child:
            return Element(e.name, e.attributes, e.children[:i] + e.children[i + 1 :])
    return None


# --- path evaluation --------------------------------------------------------


def eval_path(
    ctx: Node,
    path: PathExpr,
    mode: str = ALL_SOLUTIONS,
    coerce_text: bool = True,
    root: Node | None = None,
) -> Iterator[Result]:
    """Apply the steps of `path` left to right, starting from `ctx`.

    Each step maps over the current result stream in order; Index(k)
    selects the k-th item of the incoming stream.  FIRST_ONLY truncates
    the final stream to its head, committing to the first alternative;
    ALL_SOLUTIONS yields every result.  An empty intermediate stream
    makes the whole path fail with an empty result.

    With `coerce_text` on (the default), the # step applied to an
    element drills into its direct text children instead of failing;
    with it off, # only accepts text nodes, and elements fall through as
    failures.  `root` is the document the lvl step computes index paths
    against; it defaults to `ctx`.
    """
    base = ctx if root is None else root
    stream: Iterator[Result] = iter((ctx,))
    for position, step in enumerate(path.steps, start=1):
        stream = _apply_step(stream, step, position, coerce_text, base)
    if mode == FIRST_ONLY:
        for item in stream:
            yield item
            return
    else:
        yield from stream


def _coerced_text(node: Node) -> Iterator[str]:
    if isinstance(node, Element):
        for child in node.children:
            if isinstance(child, Text):
                yield child.content
    else:
        value = text_value(node)
        if value is not None:
            yield value


def _apply_step(
    stream: Iterator[Result], step: Step, position: int, coerce_text: bool, root: Node
) -> Iterator[Result]:
    if isinstance(step, Index):
        for i, item in enumerate(stream, start=1):
            if i == step.k:
                yield item
                return
        return
    for item in stream:
        yield from _step_on_item(item, step, position, coerce_text, root)


def _step_on_item(
    item: Result, step: Step, position: int, coerce_text: bool, root: Node
) -> Iterator[Result]:
    def need_node() -> Node:
        if isinstance(item, (Element, Text, PI, Comment)):
            return item
        raise TypeMismatchError(f"needs a node, got {item!r}")

    try:
        if isinstance(step, ChildNamed):
            yield from child_by_name(need_node(), step.name)
        elif isinstance(step, DescendantOrSelfNamed):
            yield from descendant_or_self_by_name(need_node(), step.name)
        elif isinstance(step, AttrValue):
            value = attr_value(need_node(), step.name)
            if value is not None:
                yield value
        elif isinstance(step, AttrNameByValue):
            yield from attr_name_by_value(need_node(), step.value)
        elif isinstance(step, TextValue):
            node = need_node()
            if coerce_text:
                yield from _coerced_text(node)
            else:
                value = text_value(node)
                if value is not None:
                    yield value
        elif isinstance(step, PIValue):
            value = pi_value(need_node())
            if value is not None:
                yield value
        elif isinstance(step, Children):
            yield from children(need_node())
        elif isinstance(step, Descendants):
            yield from descendants(need_node())
        elif isinstance(step, LastChild):
            node = last_child(need_node())
            if node is not None:
                yield node
        elif isinstance(step, CountChildren):
            count = count_children(need_node())
            if count is not None:
                yield count
        elif isinstance(step, Lvl):
            yield from lvl(root, need_node())
        else:  # pragma: no cover - exhaustive over Step
            raise TypeMismatchError(f"unknown step {step!r}")
    except TypeMismatchError as exc:
        raise TypeMismatchError(f"step {position} ({step!r}): {exc}") from None
