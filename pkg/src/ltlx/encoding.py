"""Injective rewriting of documents into element/text-only form.

Processing instructions and comments become text nodes whose content is
prefixed by a reserved sentinel character; each attribute becomes a
leading child element wrapping a sentinel-marked text node.  Inputs that
already contain a sentinel are rejected rather than escaped, which keeps
the encoding injective and the decoder unambiguous.

Default sentinels live in the Unicode private-use area so that ordinary
text (including Greek letters) never collides with them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DecodeError, SentinelCollisionError
from .nodes import Attribute, Comment, Element, Node, PI, Text


@dataclass(frozen=True)
class SentinelConfig:
    """The three marker characters: PI prefix, comment prefix, attribute prefix."""

    pi_mark: str = ""
    comment_mark: str = ""
    attr_mark: str = ""

    def __post_init__(self) -> None:
        marks = (self.pi_mark, self.comment_mark, self.attr_mark)
        if any(len(m) != 1 for m in marks):
            raise ValueError("sentinels must be single characters")
        if len(set(marks)) != 3:
            raise ValueError("sentinels must be pairwise distinct")

    @property
    def marks(self) -> tuple[str, str, str]:
        return (self.pi_mark, self.comment_mark, self.attr_mark)


DEFAULT_SENTINELS = SentinelConfig()


def _check_clean(content: str, config: SentinelConfig, location: str) -> None:
    for mark in config.marks:
        if mark in content:
            raise SentinelCollisionError(mark, location)


def encode_core(node: Node, config: SentinelConfig = DEFAULT_SENTINELS) -> Node:
    """Rewrite `node` into an equivalent document of elements and text only.

    pi(t) becomes text(pi_mark + t), comment(t) becomes
    text(comment_mark + t), and every attribute name="v" becomes a child
    element(name, [], [text(attr_mark + v)]) inserted before the original
    children, in attribute order.  Raises SentinelCollisionError if any
    text or attribute value already contains a sentinel.
    """
    return _encode(node, config, "/")


def _encode(node: Node, config: SentinelConfig, location: str) -> Node:
    if isinstance(node, Text):
        _check_clean(node.content, config, f"text at {location}")
        return node
    if isinstance(node, PI):
        _check_clean(node.content, config, f"pi at {location}")
        return Text(config.pi_mark + node.content)
    if isinstance(node, Comment):
        _check_clean(node.content, config, f"comment at {location}")
        return Text(config.comment_mark + node.content)
    wrapped = []
    for attr in node.attributes:
        _check_clean(attr.value, config, f"attribute {attr.name} at {location}")
        wrapped.append(Element(attr.name, (), (Text(config.attr_mark + attr.value),)))
    encoded = [
        _encode(child, config, f"{location}{node.name}[{i + 1}]/")
        for i, child in enumerate(node.children)
    ]
    return Element(node.name, (), tuple(wrapped) + tuple(encoded))


def _as_attribute_wrapper(node: Node, config: SentinelConfig) -> tuple[str, str] | None:
    """Return (name, value) when `node` is an encoded attribute, else None."""
    if (
        isinstance(node, Element)
        and not node.attributes
        and len(node.children) == 1
        and isinstance(node.children[0], Text)
        and node.children[0].content.startswith(config.attr_mark)
    ):
        return node.name, node.children[0].content[1:]
    return None


def decode_core(node: Node, config: SentinelConfig = DEFAULT_SENTINELS) -> Node:
    """Invert encode_core: decode_core(encode_core(x), s) == x.

    Only defined on images of encode_core; anything else (raw attributes,
    surviving pi/comment variants, stray attribute-marked text, attribute
    wrappers positioned after real children) raises DecodeError.
    """
    if isinstance(node, Text):
        content = node.content
        if content.startswith(config.pi_mark):
            return PI(content[1:])
        if content.startswith(config.comment_mark):
            return Comment(content[1:])
        if content.startswith(config.attr_mark):
            raise DecodeError("attribute-marked text outside an attribute wrapper")
        return node
    if not isinstance(node, Element):
        raise DecodeError(f"{type(node).__name__.lower()} node cannot appear in an encoded document")
    if node.attributes:
        raise DecodeError(f"element {node.name!r} still carries raw attributes")
    attrs: list[Attribute] = []
    rest = list(node.children)
    while rest:
        pair = _as_attribute_wrapper(rest[0], config)
        if pair is None:
            break
        attrs.append(Attribute(*pair))
        rest.pop(0)
    children = []
    for child in rest:
        if _as_attribute_wrapper(child, config) is not None:
            raise DecodeError(
                f"attribute wrapper after real children of element {node.name!r}"
            )
        children.append(decode_core(child, config))
    return Element(node.name, tuple(attrs), tuple(children))


def is_core(node: Node) -> bool:
    """True when the subtree contains only element and text variants."""
    if isinstance(node, Text):
        return True
    if isinstance(node, Element):
        return not node.attributes and all(is_core(c) for c in node.children)
    return False


def split_sentinel_text(node: Node, config: SentinelConfig = DEFAULT_SENTINELS) -> Node:
    """Re-split text nodes at sentinel boundaries after an XML round trip.

    Writing an encoded document out as XML merges adjacent text node
    siblings, losing the boundaries of the marked texts.  Since original
    content never contains a sentinel, every sentinel occurrence inside a
    merged run necessarily started its own marked node, so splitting
    there restores the encoding.  One case is unrecoverable from the
    textual form: plain text that immediately followed a marked node has
    been absorbed into it and stays there.
    """
    if isinstance(node, Element):
        children: list[Node] = []
        for child in node.children:
            if isinstance(child, Text):
                children.extend(Text(part) for part in _split(child.content, config))
            else:
                children.append(split_sentinel_text(child, config))
        return Element(node.name, node.attributes, tuple(children))
    return node


def _split(content: str, config: SentinelConfig) -> list[str]:
    if not content:
        return [content]
    cuts = [i for i, ch in enumerate(content) if ch in config.marks and i > 0]
    parts = []
    begin = 0
    for cut in cuts:
        parts.append(content[begin:cut])
        begin = cut
    parts.append(content[begin:])
    return parts
