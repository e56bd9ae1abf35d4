"""HTML ingestion: loading, cleaning, DOM building, micro-block extraction.

Parsing is tolerant: real pages are rarely well formed, so markup is repaired
(auto-closed paragraphs/cells, stray end tags ignored) rather than rejected.
Cleaning re-serialises to a canonical form, which makes it idempotent.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from html import escape
from html.parser import HTMLParser
from pathlib import Path

import requests

from .errors import EmptyDocumentError, EncodingError, FetchError, HtmlParseError
from .textproc import normalize_whitespace

REMOVED_TAGS = frozenset({"meta", "script", "style", "noscript", "iframe", "link"})

VOID_TAGS = frozenset(
    {"area", "base", "br", "col", "embed", "hr", "img", "input", "param",
     "source", "track", "wbr"}
)

# Starting the key tag implicitly closes any of the mapped open tags.
_CLOSED_BY = {
    "p": {"p"},
    "li": {"li"},
    "tr": {"tr", "td", "th"},
    "td": {"td", "th"},
    "th": {"td", "th"},
    "option": {"option"},
}

_EMPHASIS_BY_TAG = {
    "b": "bold", "strong": "bold",
    "u": "underline",
    "i": "italics", "em": "italics",
    "caption": "caption",
    "h1": "paragraph-title", "h2": "paragraph-title", "h3": "paragraph-title",
    "h4": "paragraph-title", "h5": "paragraph-title", "h6": "paragraph-title",
    "title": "paragraph-title",
}

HEADING_EMPHASIS = frozenset({"paragraph-title", "caption"})

_COLOR_STYLE_RE = re.compile(r"(?:^|;)\s*color\s*:", re.IGNORECASE)
_CHARSET_RE = re.compile(rb"charset\s*=\s*[\"']?([A-Za-z0-9_\-]+)", re.IGNORECASE)
_URL_RE = re.compile(r"^https?://", re.IGNORECASE)

TEXT_TAG = "#text"


@dataclass
class RawDocument:
    doc_id: str
    source: str
    bytes: bytes
    fetched_at: float


@dataclass
class DomNode:
    tag: str
    children: list["DomNode"] = field(default_factory=list)
    text: str = ""
    sibling_index: int = 0
    emphasis: frozenset[str] = frozenset()

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass
class DomTree:
    doc_id: str
    root: DomNode


@dataclass
class MicroBlock:
    id: str
    doc_id: str
    parent_path: tuple[tuple[str, int], ...]
    text: str
    sibling_index: int
    sibling_count: int
    emphasis: frozenset[str]


# --- loading ----------------------------------------------------------------

def load_document(source: str, doc_id: str, timeout: float = 10.0) -> RawDocument:
    """Read HTML bytes from a local path or an http(s) URL."""
    if _URL_RE.match(source):
        try:
            resp = requests.get(source, timeout=timeout)
            resp.raise_for_status()
        except requests.RequestException as exc:
            raise FetchError(f"cannot fetch {source}: {exc}") from exc
        body = resp.content
    else:
        path = Path(source)
        try:
            body = path.read_bytes()
        except OSError as exc:
            raise FetchError(f"cannot read {source}: {exc}") from exc
    if not body:
        raise EmptyDocumentError(f"empty document: {source}")
    return RawDocument(doc_id=doc_id, source=str(source), bytes=body, fetched_at=time.time())


def _decode(body: bytes) -> str:
    """UTF-8 by default; honour a declared charset, otherwise reject."""
    match = _CHARSET_RE.search(body[:4096])
    encoding = match.group(1).decode("ascii").lower() if match else "utf-8"
    try:
        return body.decode(encoding)
    except (LookupError, UnicodeDecodeError) as exc:
        raise EncodingError(f"cannot decode document as {encoding}: {exc}") from exc


# --- tolerant parsing -------------------------------------------------------

@dataclass
class _El:
    tag: str
    attrs: dict[str, str]
    children: list = field(default_factory=list)  # _El | str


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.top: list = []
        self._stack: list[_El] = []

    def _append(self, node) -> None:
        target = self._stack[-1].children if self._stack else self.top
        target.append(node)

    def handle_starttag(self, tag, attrs):
        tag = tag.lower()
        while self._stack and self._stack[-1].tag in _CLOSED_BY.get(tag, ()):
            self._stack.pop()
        el = _El(tag, {k.lower(): (v or "") for k, v in attrs})
        self._append(el)
        if tag not in VOID_TAGS:
            self._stack.append(el)

    def handle_startendtag(self, tag, attrs):
        tag = tag.lower()
        self._append(_El(tag, {k.lower(): (v or "") for k, v in attrs}))

    def handle_endtag(self, tag):
        tag = tag.lower()
        for i in range(len(self._stack) - 1, -1, -1):
            if self._stack[i].tag == tag:
                del self._stack[i:]
                return
        # stray end tag: ignore

    def handle_data(self, data):
        if data:
            self._append(data)


def _parse(body: bytes) -> list:
    text = _decode(body)
    builder = _TreeBuilder()
    try:
        builder.feed(text)
        builder.close()
    except Exception as exc:  # html.parser almost never raises, but be explicit
        raise HtmlParseError(f"unparseable markup: {exc}") from exc
    return builder.top


# --- cleaning ---------------------------------------------------------------

def _clean_el(el: _El) -> _El | None:
    if el.tag in REMOVED_TAGS:
        return None
    attrs = {}
    for name, value in el.attrs.items():
        if name == "align":
            continue
        if name == "style" and not _COLOR_STYLE_RE.search(value):
            continue
        attrs[name] = value
    children = []
    for child in el.children:
        if isinstance(child, str):
            children.append(child)
        else:
            kept = _clean_el(child)
            if kept is not None:
                children.append(kept)
    return _El(el.tag, attrs, children)


def _render(node, out: list[str]) -> None:
    if isinstance(node, str):
        out.append(escape(node, quote=False))
        return
    attr_str = "".join(
        f' {name}="{escape(value, quote=True)}"'
        for name, value in sorted(node.attrs.items())
    )
    if node.tag in VOID_TAGS:
        out.append(f"<{node.tag}{attr_str}/>")
        return
    out.append(f"<{node.tag}{attr_str}>")
    for child in node.children:
        _render(child, out)
    out.append(f"</{node.tag}>")


def _collect_text(nodes, out: list[str]) -> None:
    for node in nodes:
        if isinstance(node, str):
            out.append(node)
        else:
            _collect_text(node.children, out)


def clean_html(doc: RawDocument) -> RawDocument:
    """Strip non-content markup, keeping all retained text verbatim.

    Removes meta/script/style/noscript/iframe/link elements, align attributes,
    and style attributes that do not record a colour change. The output is a
    canonical serialisation, so cleaning an already-clean document is a no-op.
    """
    top = _parse(doc.bytes)
    cleaned = []
    for node in top:
        if isinstance(node, str):
            cleaned.append(node)
        else:
            kept = _clean_el(node)
            if kept is not None:
                cleaned.append(kept)
    chunks: list[str] = []
    _collect_text(cleaned, chunks)
    if not "".join(chunks).strip():
        raise EmptyDocumentError(f"no text content after cleaning: {doc.doc_id}")
    out: list[str] = []
    for node in cleaned:
        _render(node, out)
    return RawDocument(
        doc_id=doc.doc_id,
        source=doc.source,
        bytes="".join(out).encode("utf-8"),
        fetched_at=doc.fetched_at,
    )


# --- DOM construction -------------------------------------------------------

def _own_emphasis(el: _El) -> set[str]:
    tags = set()
    mapped = _EMPHASIS_BY_TAG.get(el.tag)
    if mapped:
        tags.add(mapped)
    if "color" in el.attrs or _COLOR_STYLE_RE.search(el.attrs.get("style", "")):
        tags.add("color-change")
    return tags


def _build_node(el: _El, sibling_index: int, inherited: frozenset[str]) -> DomNode:
    emphasis = inherited | _own_emphasis(el)
    element_children = [c for c in el.children if isinstance(c, _El)]
    text_chunks = [c for c in el.children if isinstance(c, str) and c.strip()]

    if not element_children:
        return DomNode(
            tag=el.tag,
            text="".join(text_chunks),
            sibling_index=sibling_index,
            emphasis=emphasis,
        )

    children: list[DomNode] = []
    for child in el.children:
        if isinstance(child, str):
            if child.strip():
                children.append(
                    DomNode(tag=TEXT_TAG, text=child, sibling_index=len(children),
                            emphasis=emphasis)
                )
        else:
            children.append(_build_node(child, len(children), emphasis))
    return DomNode(tag=el.tag, children=children, sibling_index=sibling_index,
                   emphasis=emphasis)


def build_dom(doc: RawDocument) -> DomTree:
    """Build the element tree of a cleaned document, tagging emphasis."""
    top = _parse(doc.bytes)
    elements = [n for n in top if isinstance(n, _El)]
    stray_text = any(isinstance(n, str) and n.strip() for n in top)
    if len(elements) == 1 and not stray_text:
        root = _build_node(elements[0], 0, frozenset())
    else:
        root = _build_node(_El("document", {}, top), 0, frozenset())
    if root.is_leaf and root.text:
        # guarantee every text leaf has a parent
        root = DomNode(tag="document", children=[root], emphasis=frozenset())
    return DomTree(doc_id=doc.doc_id, root=root)


def extract_micro_blocks(tree: DomTree) -> list[MicroBlock]:
    """One block per non-empty text leaf, in document order."""
    blocks: list[MicroBlock] = []

    def walk(node: DomNode, path: tuple[tuple[str, int], ...]) -> None:
        if node.is_leaf:
            return
        child_path = path + ((node.tag, node.sibling_index),)
        for child in node.children:
            if child.is_leaf:
                text = normalize_whitespace(child.text)
                if text:
                    blocks.append(
                        MicroBlock(
                            id=f"mb{len(blocks):04d}",
                            doc_id=tree.doc_id,
                            parent_path=child_path,
                            text=text,
                            sibling_index=child.sibling_index,
                            sibling_count=len(node.children),
                            emphasis=child.emphasis,
                        )
                    )
            else:
                walk(child, child_path)

    walk(tree.root, ())
    return blocks


def document_title(tree: DomTree) -> str:
    """Text of the title element, else the first heading-emphasised leaf."""
    title_text = ""
    first_heading = ""

    def walk(node: DomNode) -> None:
        nonlocal title_text, first_heading
        if node.is_leaf:
            text = normalize_whitespace(node.text)
            if not text:
                return
            if node.tag == "title" and not title_text:
                title_text = text
            if not first_heading and node.emphasis & HEADING_EMPHASIS:
                first_heading = text
            return
        for child in node.children:
            walk(child)

    walk(tree.root)
    return title_text or first_heading
