"""Clients for the public scholarly metadata APIs.

Each client knows its native payload format (Crossref/OpenAlex/dblp/Google
Books/OSTI JSON, arXiv Atom XML), builds canonical query strings used as
cache keys, and maps responses into MetadataRecord values. Responses are
served cache-first; a cached empty payload means a recorded not-found.
"""

from __future__ import annotations

import json
import logging
import re
import xml.etree.ElementTree as ET
from typing import TYPE_CHECKING

from ..errors import UsageError
from ..identifiers import is_valid_doi, normalize_doi
from ..names import PersonName, parse_person
from .cache import DEFAULT_TTL, ResponseCache
from .models import ArxivVersion, MetadataRecord, SourceId
from .transport import Transport

if TYPE_CHECKING:
    from ..parse import ParsedReference

logger = logging.getLogger(__name__)

MAX_RESULTS = 5


def canonical_title_query(title: str) -> str:
    return " ".join(title.lower().split())


class HttpSourceClient:
    source_id: SourceId

    def __init__(
        self,
        transport: Transport,
        cache: ResponseCache | None = None,
        max_results: int = MAX_RESULTS,
        ttl: float = DEFAULT_TTL,
        refresh: bool = False,
    ):
        self.transport = transport
        self.cache = cache
        self.max_results = max_results
        self.ttl = ttl
        self.refresh = refresh

    def _fetch(self, query: str, url: str, params: dict | None = None) -> bytes:
        if self.cache is not None and not self.refresh:
            hit = self.cache.get(self.source_id.value, query)
            if hit is not None:
                return hit
        response = self.transport.request(self.source_id.value, url, params)
        body = response.body if response.status == 200 else b""
        if response.status not in (200, 404):
            logger.warning("%s returned %d for %s", self.source_id.value, response.status, query)
        if self.cache is not None:
            self.cache.put(self.source_id.value, query, body, self.ttl)
        return body

    def relevant_identifier(self, ref: "ParsedReference") -> str | None:
        return None

    def lookup(self, ref: "ParsedReference") -> list[MetadataRecord]:
        return []

    def search_title(self, title: str) -> list[MetadataRecord]:
        return []


def _person_from_display(display: str) -> PersonName | None:
    return parse_person(display)


def _person_family_first(text: str) -> PersonName | None:
    """Parse 'Family, Given' spans (OSTI style)."""
    if "," in text:
        family, _, given = text.partition(",")
        family, given = family.strip(), given.strip()
        if family:
            return PersonName(family=family, given=given or None, raw=text.strip())
    return parse_person(text)


class CrossrefClient(HttpSourceClient):
    source_id = SourceId.CROSSREF
    BASE = "https://api.crossref.org/works"

    def relevant_identifier(self, ref):
        return ref.identifiers.doi

    def resolve_doi(self, doi: str) -> MetadataRecord | None:
        doi = normalize_doi(doi)
        if not is_valid_doi(doi):
            raise UsageError(f"not a syntactically valid DOI: {doi!r}")
        body = self._fetch(f"doi:{doi}", f"{self.BASE}/{doi}")
        if not body:
            return None
        try:
            message = json.loads(body)["message"]
        except (ValueError, KeyError):
            return None
        return self._record(message)

    def lookup(self, ref):
        if not ref.identifiers.doi:
            return []
        record = self.resolve_doi(ref.identifiers.doi)
        return [record] if record else []

    def search_title(self, title):
        query = canonical_title_query(title)
        body = self._fetch(
            f"title:{query}",
            self.BASE,
            {"query.bibliographic": title, "rows": str(self.max_results)},
        )
        if not body:
            return []
        try:
            items = json.loads(body)["message"]["items"]
        except (ValueError, KeyError):
            return []
        return _collect(self._record, items, self.max_results)

    def _record(self, item: dict) -> MetadataRecord | None:
        titles = item.get("title") or []
        if not titles or not titles[0]:
            return None
        authors = []
        for author in item.get("author", []):
            family = (author.get("family") or "").strip()
            if family:
                authors.append(
                    PersonName(
                        family=family,
                        given=(author.get("given") or "").strip() or None,
                        raw=f"{author.get('given', '')} {family}".strip(),
                    )
                )
        year = None
        for key in ("published-print", "published-online", "issued"):
            parts = item.get(key, {}).get("date-parts", [[]])
            if parts and parts[0] and parts[0][0]:
                year = int(parts[0][0])
                break
        container = item.get("container-title") or []
        doi = normalize_doi(item["DOI"]) if item.get("DOI") else None
        return MetadataRecord(
            title=titles[0],
            authors=tuple(authors),
            venue=container[0] if container else None,
            year=year,
            doi=doi,
            pages=item.get("page"),
            source=self.source_id,
            source_native_id=doi or titles[0],
        )


class OpenAlexClient(HttpSourceClient):
    source_id = SourceId.OPENALEX
    BASE = "https://api.openalex.org/works"

    def relevant_identifier(self, ref):
        return ref.identifiers.doi

    def lookup(self, ref):
        doi = ref.identifiers.doi
        if not doi:
            return []
        body = self._fetch(f"doi:{doi}", f"{self.BASE}/https://doi.org/{doi}")
        if not body:
            return []
        try:
            work = json.loads(body)
        except ValueError:
            return []
        record = self._record(work)
        return [record] if record else []

    def search_title(self, title):
        query = canonical_title_query(title)
        body = self._fetch(
            f"title:{query}",
            self.BASE,
            {"search": title, "per-page": str(self.max_results)},
        )
        if not body:
            return []
        try:
            results = json.loads(body)["results"]
        except (ValueError, KeyError):
            return []
        return _collect(self._record, results, self.max_results)

    def _record(self, work: dict) -> MetadataRecord | None:
        title = work.get("title") or work.get("display_name")
        if not title:
            return None
        authors = []
        for authorship in work.get("authorships", []):
            display = (authorship.get("author") or {}).get("display_name") or ""
            person = _person_from_display(display)
            if person:
                authors.append(person)
        doi = normalize_doi(work["doi"]) if work.get("doi") else None
        venue = ((work.get("primary_location") or {}).get("source") or {}).get("display_name")
        biblio = work.get("biblio") or {}
        pages = None
        if biblio.get("first_page") and biblio.get("last_page"):
            pages = f"{biblio['first_page']}-{biblio['last_page']}"
        return MetadataRecord(
            title=title,
            authors=tuple(authors),
            venue=venue,
            year=work.get("publication_year"),
            doi=doi,
            pages=pages,
            source=self.source_id,
            source_native_id=work.get("id") or doi or title,
        )


class DblpClient(HttpSourceClient):
    source_id = SourceId.DBLP
    BASE = "https://dblp.org/search/publ/api"

    def search_title(self, title):
        query = canonical_title_query(title)
        body = self._fetch(
            f"title:{query}",
            self.BASE,
            {"q": title, "format": "json", "h": str(self.max_results)},
        )
        if not body:
            return []
        try:
            hits = json.loads(body)["result"]["hits"].get("hit", [])
        except (ValueError, KeyError):
            return []
        return _collect(self._record, hits, self.max_results)

    def _record(self, hit: dict) -> MetadataRecord | None:
        info = hit.get("info", {})
        title = (info.get("title") or "").rstrip(".")
        if not title:
            return None
        raw_authors = (info.get("authors") or {}).get("author", [])
        if isinstance(raw_authors, dict):
            raw_authors = [raw_authors]
        authors = []
        for author in raw_authors:
            text = author.get("text") if isinstance(author, dict) else str(author)
            # dblp disambiguates homonyms with a numeric suffix ("Wei Wang 0017")
            person = _person_from_display(re.sub(r"\s+\d{4}$", "", text or ""))
            if person:
                authors.append(person)
        return MetadataRecord(
            title=title,
            authors=tuple(authors),
            venue=info.get("venue"),
            year=int(info["year"]) if info.get("year") else None,
            doi=normalize_doi(info["doi"]) if info.get("doi") else None,
            pages=info.get("pages"),
            source=self.source_id,
            source_native_id=info.get("key") or title,
        )


_ATOM_NS = {"atom": "http://www.w3.org/2005/Atom"}


class ArxivClient(HttpSourceClient):
    source_id = SourceId.ARXIV
    BASE = "https://export.arxiv.org/api/query"

    def relevant_identifier(self, ref):
        return ref.identifiers.arxiv_id

    def lookup(self, ref):
        arxiv_id = ref.identifiers.arxiv_id
        if not arxiv_id:
            return []
        body = self._fetch(f"id:{arxiv_id}", self.BASE, {"id_list": arxiv_id, "max_results": "1"})
        entries = self._entries(body)
        if not entries:
            return []
        latest = max(entries, key=lambda e: e["version"])
        versions = entries
        if latest["version"] > 1:
            id_list = ",".join(f"{arxiv_id}v{v}" for v in range(1, latest["version"] + 1))
            history = self._fetch(
                f"versions:{arxiv_id}",
                self.BASE,
                {"id_list": id_list, "max_results": str(latest["version"])},
            )
            versions = self._entries(history) or entries
        version_tuple = tuple(
            ArxivVersion(version=e["version"], title=e["title"], authors=e["authors"])
            for e in sorted(versions, key=lambda e: e["version"])
        )
        return [self._record(latest, arxiv_id, version_tuple)]

    def search_title(self, title):
        query = canonical_title_query(title)
        body = self._fetch(
            f"title:{query}",
            self.BASE,
            {"search_query": f'ti:"{title}"', "max_results": str(self.max_results)},
        )
        records = []
        for entry in self._entries(body)[: self.max_results]:
            records.append(self._record(entry, entry["id"], None))
        return records

    def _entries(self, body: bytes) -> list[dict]:
        if not body:
            return []
        try:
            root = ET.fromstring(body)
        except ET.ParseError:
            return []
        entries = []
        for node in root.findall("atom:entry", _ATOM_NS):
            id_text = (node.findtext("atom:id", "", _ATOM_NS) or "").strip()
            match = re.search(r"abs/(.+?)(?:v(\d+))?$", id_text)
            if not match:
                continue
            title = " ".join((node.findtext("atom:title", "", _ATOM_NS) or "").split())
            if not title:
                continue
            authors = []
            for author in node.findall("atom:author", _ATOM_NS):
                person = _person_from_display(author.findtext("atom:name", "", _ATOM_NS) or "")
                if person:
                    authors.append(person)
            published = node.findtext("atom:published", "", _ATOM_NS) or ""
            entries.append(
                {
                    "id": match.group(1),
                    "version": int(match.group(2)) if match.group(2) else 1,
                    "title": title,
                    "authors": tuple(authors),
                    "year": int(published[:4]) if published[:4].isdigit() else None,
                    "doi": None,
                }
            )
        return entries

    def _record(self, entry: dict, arxiv_id: str, versions) -> MetadataRecord:
        return MetadataRecord(
            title=entry["title"],
            authors=entry["authors"],
            venue="arXiv",
            year=entry["year"],
            arxiv_id=arxiv_id,
            arxiv_versions=versions,
            source=self.source_id,
            source_native_id=f"{arxiv_id}v{entry['version']}",
        )


class GoogleBooksClient(HttpSourceClient):
    source_id = SourceId.GOOGLE_BOOKS
    BASE = "https://www.googleapis.com/books/v1/volumes"

    def search_title(self, title):
        query = canonical_title_query(title)
        body = self._fetch(
            f"title:{query}",
            self.BASE,
            {"q": f'intitle:"{title}"', "maxResults": str(self.max_results)},
        )
        if not body:
            return []
        try:
            items = json.loads(body).get("items", [])
        except ValueError:
            return []
        return _collect(self._record, items, self.max_results)

    def _record(self, item: dict) -> MetadataRecord | None:
        info = item.get("volumeInfo", {})
        title = info.get("title")
        if not title:
            return None
        if info.get("subtitle"):
            title = f"{title}: {info['subtitle']}"
        authors = []
        for display in info.get("authors", []):
            person = _person_from_display(display)
            if person:
                authors.append(person)
        date = info.get("publishedDate", "")
        return MetadataRecord(
            title=title,
            authors=tuple(authors),
            venue=info.get("publisher"),
            year=int(date[:4]) if date[:4].isdigit() else None,
            source=self.source_id,
            source_native_id=item.get("id") or title,
        )


class OstiClient(HttpSourceClient):
    source_id = SourceId.OSTI
    BASE = "https://www.osti.gov/api/v1/records"

    def search_title(self, title):
        query = canonical_title_query(title)
        body = self._fetch(
            f"title:{query}", self.BASE, {"title": title, "rows": str(self.max_results)}
        )
        if not body:
            return []
        try:
            items = json.loads(body)
        except ValueError:
            return []
        if isinstance(items, dict):
            items = items.get("records", [])
        return _collect(self._record, items, self.max_results)

    def _record(self, item: dict) -> MetadataRecord | None:
        title = item.get("title")
        if not title:
            return None
        authors = []
        for text in item.get("authors", []):
            person = _person_family_first(text)
            if person:
                authors.append(person)
        date = item.get("publication_date", "") or ""
        return MetadataRecord(
            title=title,
            authors=tuple(authors),
            venue=item.get("journal_name"),
            year=int(date[:4]) if date[:4].isdigit() else None,
            doi=normalize_doi(item["doi"]) if item.get("doi") else None,
            source=self.source_id,
            source_native_id=str(item.get("osti_id") or title),
        )


def _collect(builder, items, limit: int) -> list[MetadataRecord]:
    records = []
    for item in items:
        try:
            record = builder(item)
        except (ValueError, TypeError, KeyError):
            continue
        if record is not None:
            records.append(record)
        if len(records) >= limit:
            break
    return records


CLIENT_CLASSES = {
    SourceId.CROSSREF: CrossrefClient,
    SourceId.OPENALEX: OpenAlexClient,
    SourceId.DBLP: DblpClient,
    SourceId.ARXIV: ArxivClient,
    SourceId.GOOGLE_BOOKS: GoogleBooksClient,
    SourceId.OSTI: OstiClient,
}


def build_clients(
    sources,
    transport: Transport,
    cache: ResponseCache | None = None,
    max_results: int = MAX_RESULTS,
    refresh: bool = False,
) -> dict[SourceId, HttpSourceClient]:
    return {
        source: CLIENT_CLASSES[source](transport, cache, max_results=max_results, refresh=refresh)
        for source in sources
    }


def evidence_links(record: MetadataRecord) -> list[str]:
    """Outbound links a reviewer can follow to verify a candidate."""
    links = []
    if record.doi:
        links.append(f"https://doi.org/{record.doi}")
    if record.arxiv_id:
        links.append(f"https://arxiv.org/abs/{record.arxiv_id}")
    if record.source is SourceId.DBLP:
        links.append(f"https://dblp.org/rec/{record.source_native_id}")
    elif record.source is SourceId.OPENALEX and record.source_native_id.startswith("http"):
        links.append(record.source_native_id)
    elif record.source is SourceId.OSTI:
        links.append(f"https://www.osti.gov/biblio/{record.source_native_id}")
    elif record.source is SourceId.GOOGLE_BOOKS:
        links.append(f"https://books.google.com/books?id={record.source_native_id}")
    return links
