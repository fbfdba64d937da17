"""Recorded-style response payloads in each aggregator's native format.

Shapes mirror the live APIs (Crossref/OpenAlex JSON envelopes, dblp JSON,
arXiv Atom XML, Google Books and OSTI JSON) so the client parsers are
exercised exactly as they would be online. ``seed_*`` helpers store payloads
in a response cache under the same canonical queries the clients issue, which
is how offline runs are fed.
"""

from __future__ import annotations

import json
from xml.sax.saxutils import escape

from citecheck.sources.cache import ResponseCache
from citecheck.sources.clients import canonical_title_query


def crossref_item(title, authors, venue=None, year=None, doi=None, pages=None) -> dict:
    """authors: list of (given, family)."""
    item = {
        "title": [title],
        "author": [{"given": g, "family": f} for g, f in authors],
        "container-title": [venue] if venue else [],
    }
    if year:
        item["issued"] = {"date-parts": [[year]]}
    if doi:
        item["DOI"] = doi
    if pages:
        item["page"] = pages
    return item


def crossref_doi_payload(item: dict) -> bytes:
    return json.dumps({"status": "ok", "message": item}).encode()


def crossref_search_payload(items: list[dict]) -> bytes:
    return json.dumps({"status": "ok", "message": {"items": items}}).encode()


def openalex_work(title, authors, venue=None, year=None, doi=None, pages=None, work_id="https://openalex.org/W1") -> dict:
    work = {
        "id": work_id,
        "title": title,
        "display_name": title,
        "authorships": [
            {"author": {"display_name": f"{g} {f}".strip()}} for g, f in authors
        ],
        "publication_year": year,
        "primary_location": {"source": {"display_name": venue}} if venue else None,
        "biblio": {},
    }
    if doi:
        work["doi"] = f"https://doi.org/{doi}"
    if pages and "-" in pages:
        first, last = pages.split("-", 1)
        work["biblio"] = {"first_page": first, "last_page": last}
    return work


def openalex_search_payload(works: list[dict]) -> bytes:
    return json.dumps({"results": works, "meta": {"count": len(works)}}).encode()


def openalex_doi_payload(work: dict) -> bytes:
    return json.dumps(work).encode()


def dblp_hit(title, authors, venue=None, year=None, doi=None, key="conf/x/y1", pages=None) -> dict:
    info = {
        "title": f"{title}.",
        "authors": {"author": [{"text": f"{g} {f}".strip()} for g, f in authors]},
        "key": key,
    }
    if venue:
        info["venue"] = venue
    if year:
        info["year"] = str(year)
    if doi:
        info["doi"] = doi.upper()
    if pages:
        info["pages"] = pages
    return {"info": info}


def dblp_search_payload(hits: list[dict]) -> bytes:
    return json.dumps(
        {"result": {"hits": {"@total": str(len(hits)), "hit": hits}}}
    ).encode()


def arxiv_entry_xml(arxiv_id, version, title, authors, published="2021-04-05T17:58:33Z") -> str:
    author_xml = "".join(
        f"<author><name>{escape(f'{g} {f}'.strip())}</name></author>" for g, f in authors
    )
    return (
        "<entry>"
        f"<id>http://arxiv.org/abs/{arxiv_id}v{version}</id>"
        f"<title>{escape(title)}</title>"
        f"<published>{published}</published>"
        f"{author_xml}"
        "</entry>"
    )


def arxiv_feed_payload(entries_xml: list[str]) -> bytes:
    body = "".join(entries_xml)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>'
        '<feed xmlns="http://www.w3.org/2005/Atom">'
        f"{body}</feed>"
    ).encode()


def gbooks_volume(title, authors, publisher=None, year=None, volume_id="vol1", subtitle=None) -> dict:
    info = {"title": title, "authors": [f"{g} {f}".strip() for g, f in authors]}
    if subtitle:
        info["subtitle"] = subtitle
    if publisher:
        info["publisher"] = publisher
    if year:
        info["publishedDate"] = f"{year}-01-01"
    return {"id": volume_id, "volumeInfo": info}


def gbooks_payload(volumes: list[dict]) -> bytes:
    return json.dumps({"totalItems": len(volumes), "items": volumes}).encode()


def osti_record(title, authors, journal=None, year=None, doi=None, osti_id=1520513) -> dict:
    record = {
        "osti_id": osti_id,
        "title": title,
        "authors": [f"{f}, {g}".strip(", ") for g, f in authors],
    }
    if journal:
        record["journal_name"] = journal
    if year:
        record["publication_date"] = f"{year}-01-01"
    if doi:
        record["doi"] = doi
    return record


def osti_payload(records: list[dict]) -> bytes:
    return json.dumps(records).encode()


# ---------------------------------------------------------------------------
# Cache seeding for offline runs
# ---------------------------------------------------------------------------

def seed_title_search(cache: ResponseCache, source: str, title: str, payload: bytes) -> None:
    cache.put(source, f"title:{canonical_title_query(title)}", payload)


def seed_doi_lookup(cache: ResponseCache, source: str, doi: str, payload: bytes) -> None:
    cache.put(source, f"doi:{doi}", payload)


def seed_arxiv_id(cache: ResponseCache, arxiv_id: str, payload: bytes) -> None:
    cache.put("arxiv", f"id:{arxiv_id}", payload)


def seed_arxiv_versions(cache: ResponseCache, arxiv_id: str, payload: bytes) -> None:
    cache.put("arxiv", f"versions:{arxiv_id}", payload)
