"""Exception hierarchy shared across the package."""

from __future__ import annotations


class CompsumError(Exception):
    """Base class for all errors raised by this package."""


class FetchError(CompsumError):
    """A document source could not be read or reached."""


class EmptyDocumentError(CompsumError):
    """A loaded document had no content, or no text survived cleaning."""


class HtmlParseError(CompsumError):
    """Markup could not be parsed even with tolerant repair."""


class EncodingError(CompsumError):
    """Document bytes could not be decoded with the declared/assumed charset."""


class AbsentTermError(CompsumError):
    """A term was requested from a concept list that does not contain it."""


class UndefinedSimilarityError(CompsumError):
    """Feature similarity is undefined for an empty concept list."""


class NoBlocksError(CompsumError):
    """Block selection was attempted over an empty block list."""


class SentenceLengthError(CompsumError):
    """Sentence weighting requires at least one token."""


class NoDocumentsError(CompsumError):
    """Comparative composition needs at least one document summary."""


class EmptyQueryError(CompsumError):
    """Search requires a non-empty query string."""


class StoreError(CompsumError):
    """A document record could not be written durably."""


class RecordValidationError(CompsumError):
    """A document record violates its structural invariants."""


class DocumentNotFoundError(CompsumError):
    """No stored record exists for the requested doc_id."""

    def __init__(self, doc_id: str):
        super().__init__(f"unknown document: {doc_id}")
        self.doc_id = doc_id
