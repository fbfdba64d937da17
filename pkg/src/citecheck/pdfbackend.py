"""Pluggable PDF-to-text backends.

A backend is any callable taking PDF bytes and returning one text string per
page. ``default_backend()`` prefers pypdf when it is installed and otherwise
falls back to a small built-in extractor that handles the common case of
machine-generated text PDFs (uncompressed, Flate- or ASCII85-encoded content
streams with standard Type1 fonts). Scanned/image PDFs yield no text either
way and surface as EmptyDocument downstream.
"""

from __future__ import annotations

import base64
import re
import zlib
from typing import Callable

from .errors import MalformedPdf

PdfTextBackend = Callable[[bytes], list[str]]


def default_backend() -> PdfTextBackend:
    try:
        import pypdf  # noqa: F401

        return pypdf_extract_pages
    except ImportError:
        return builtin_extract_pages


def pypdf_extract_pages(data: bytes) -> list[str]:
    """Extract page texts with pypdf (used when the library is available)."""
    import io

    import pypdf

    try:
        reader = pypdf.PdfReader(io.BytesIO(data))
        return [page.extract_text() or "" for page in reader.pages]
    except Exception as exc:  # pypdf raises a zoo of error types
        raise MalformedPdf(str(exc)) from exc


# ---------------------------------------------------------------------------
# Built-in extractor
# ---------------------------------------------------------------------------

_OBJ_RE = re.compile(rb"(\d+)\s+\d+\s+obj\b(.*?)endobj", re.S)
_STREAM_RE = re.compile(rb"stream\r?\n(.*?)\s*endstream", re.S)
_REF_RE = re.compile(rb"(\d+)\s+\d+\s+R")


def builtin_extract_pages(data: bytes) -> list[str]:
    """Extract page texts from simple text PDFs without third-party libraries."""
    if not data.startswith(b"%PDF"):
        raise MalformedPdf("missing %PDF header")
    objects: dict[int, bytes] = {}
    for match in _OBJ_RE.finditer(data):
        objects[int(match.group(1))] = match.group(2)
    if not objects:
        raise MalformedPdf("no indirect objects found")
    page_ids = _ordered_page_ids(objects)
    if not page_ids:
        raise MalformedPdf("no page objects found")
    pages = []
    for page_id in page_ids:
        content = b"".join(
            _decoded_stream(objects[ref])
            for ref in _content_refs(objects[page_id])
            if ref in objects
        )
        pages.append(_content_text(content))
    return pages


def _ordered_page_ids(objects: dict[int, bytes]) -> list[int]:
    """Walk the page tree for document order; fall back to object order."""
    root = None
    for num, body in objects.items():
        if b"/Type /Catalog" in body or b"/Type/Catalog" in body:
            match = re.search(rb"/Pages\s+(\d+)\s+\d+\s+R", body)
            if match:
                root = int(match.group(1))
            break
    ordered: list[int] = []

    def walk(node_id: int, seen: set[int]):
        if node_id in seen or node_id not in objects:
            return
        seen.add(node_id)
        body = objects[node_id]
        if re.search(rb"/Type\s*/Page(?!s)", body):
            ordered.append(node_id)
            return
        kids = re.search(rb"/Kids\s*\[(.*?)\]", body, re.S)
        if kids:
            for ref in _REF_RE.finditer(kids.group(1)):
                walk(int(ref.group(1)), seen)

    if root is not None:
        walk(root, set())
    if not ordered:
        ordered = [
            num
            for num, body in sorted(objects.items())
            if re.search(rb"/Type\s*/Page(?!s)", body)
        ]
    return ordered


def _content_refs(page_body: bytes) -> list[int]:
    match = re.search(rb"/Contents\s*(\[[^\]]*\]|\d+\s+\d+\s+R)", page_body, re.S)
    if not match:
        return []
    return [int(m.group(1)) for m in _REF_RE.finditer(match.group(1))]


def _decoded_stream(body: bytes) -> bytes:
    match = _STREAM_RE.search(body)
    if not match:
        return b""
    raw = match.group(1)
    head = body[: match.start()]
    filters = re.findall(rb"/(ASCII85Decode|FlateDecode|AHx|ASCIIHexDecode)", head)
    for name in filters or []:
        try:
            if name == b"ASCII85Decode":
                raw = base64.a85decode(re.sub(rb"\s", b"", raw), adobe=True)
            elif name in (b"ASCIIHexDecode", b"AHx"):
                raw = bytes.fromhex(re.sub(rb"[\s>]", b"", raw).decode("ascii"))
            elif name == b"FlateDecode":
                raw = zlib.decompress(raw)
        except Exception as exc:
            raise MalformedPdf(f"undecodable content stream: {exc}") from exc
    return raw


_STRING_ESCAPES = {
    b"n": b"\n", b"r": b"\r", b"t": b"\t", b"b": b"\b", b"f": b"\f",
    b"(": b"(", b")": b")", b"\\": b"\\",
}


def _content_text(content: bytes) -> str:
    """Replay the text operators of one content stream into plain text."""
    shows: list[tuple[float, str]] = []  # (y position, text)
    x = y = 0.0
    leading = 0.0
    operands: list[object] = []
    pos = 0
    n = len(content)
    while pos < n:
        ch = content[pos : pos + 1]
        if ch.isspace():
            pos += 1
        elif ch == b"(":
            text, pos = _literal_string(content, pos)
            operands.append(text)
        elif ch == b"<" and content[pos : pos + 2] != b"<<":
            end = content.find(b">", pos)
            hexdigits = re.sub(rb"\s", b"", content[pos + 1 : end])
            if len(hexdigits) % 2:
                hexdigits += b"0"
            operands.append(bytes.fromhex(hexdigits.decode("ascii")))
            pos = end + 1
        elif ch == b"[":
            operands.append(b"[")
            pos += 1
        elif ch == b"]":
            parts = []
            while operands and operands[-1] != b"[":
                item = operands.pop()
                if isinstance(item, bytes):
                    parts.append(item)
            if operands:
                operands.pop()
            operands.append(b"".join(reversed(parts)))
            pos += 1
        elif ch == b"/":
            match = re.match(rb"/[^\s()<>\[\]{}/%]*", content[pos:])
            operands.append(match.group(0))
            pos += match.end()
        elif re.match(rb"[-+.0-9]", ch):
            match = re.match(rb"[-+.0-9]+", content[pos:])
            try:
                operands.append(float(match.group(0)))
            except ValueError:
                pass
            pos += match.end()
        elif ch == b"<":  # dictionary «<<»
            depth = 0
            while pos < n:
                if content[pos : pos + 2] == b"<<":
                    depth += 1
                    pos += 2
                elif content[pos : pos + 2] == b">>":
                    depth -= 1
                    pos += 2
                    if depth == 0:
                        break
                else:
                    pos += 1
        else:
            match = re.match(rb"[A-Za-z'\"*]+", content[pos:])
            if not match:
                pos += 1
                continue
            op = match.group(0)
            pos += match.end()
            if op in (b"Td", b"TD") and len(operands) >= 2:
                x += float(operands[-2])
                y += float(operands[-1])
                if op == b"TD":
                    leading = -float(operands[-1])
            elif op == b"Tm" and len(operands) >= 6:
                x, y = float(operands[-2]), float(operands[-1])
            elif op == b"T*":
                y -= leading
            elif op == b"TL" and operands:
                leading = float(operands[-1])
            elif op == b"BT":
                x = y = 0.0
            elif op in (b"Tj", b"'", b'"') and operands:
                if op != b"Tj":
                    y -= leading
                raw = next(
                    (o for o in reversed(operands) if isinstance(o, bytes) and not o.startswith(b"/")),
                    b"",
                )
                shows.append((y, _decode_pdf_text(raw)))
            elif op == b"TJ" and operands:
                raw = operands[-1] if isinstance(operands[-1], bytes) else b""
                shows.append((y, _decode_pdf_text(raw)))
            operands = []
    lines: list[str] = []
    last_y: float | None = None
    for show_y, text in shows:
        if last_y is None or abs(show_y - last_y) > 0.5:
            lines.append(text)
        else:
            lines[-1] += text
        last_y = show_y
    return "\n".join(lines)


def _literal_string(content: bytes, pos: int) -> tuple[bytes, int]:
    """Parse a () literal string starting at ``pos``; returns (bytes, new pos)."""
    out = bytearray()
    depth = 0
    i = pos
    while i < len(content):
        c = content[i : i + 1]
        if c == b"\\":
            nxt = content[i + 1 : i + 2]
            if nxt in _STRING_ESCAPES:
                out += _STRING_ESCAPES[nxt]
                i += 2
            elif nxt.isdigit():
                octal = content[i + 1 : i + 4]
                octal = re.match(rb"[0-7]{1,3}", octal).group(0)
                out.append(int(octal, 8) & 0xFF)
                i += 1 + len(octal)
            else:
                i += 2
        elif c == b"(":
            depth += 1
            if depth > 1:
                out += c
            i += 1
        elif c == b")":
            depth -= 1
            if depth == 0:
                return bytes(out), i + 1
            out += c
            i += 1
        else:
            out += c
            i += 1
    return bytes(out), i


def _decode_pdf_text(raw: bytes) -> str:
    # Standard fonts are written with WinAnsi encoding; cp1252 covers it.
    if raw.startswith(b"\xfe\xff"):
        return raw[2:].decode("utf-16-be", errors="replace")
    return raw.decode("cp1252", errors="replace")
