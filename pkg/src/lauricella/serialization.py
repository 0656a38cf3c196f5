"""JSON encoding of relations.

Exact rationals are written as ``{"num": "<int>", "den": "<int>"}`` with decimal strings so that no precision
is lost; floats are written as JSON numbers. A relation document lists every term with its shifts already
applied, so a reader needs no knowledge of the relation families to evaluate it.
"""
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import jsonschema

from lauricella.core import FDParams, Family, Scalar, as_scalar
from lauricella.exceptions import LauricellaException, RelationDocumentError
from lauricella.relations import ResolvedTerm, resolve_terms

logger = logging.getLogger(__name__)

RATIONAL_SCHEMA = {
    'type': 'object',
    'properties': {
        'num': {'type': 'string', 'pattern': '^-?[0-9]+$'},
        'den': {'type': 'string', 'pattern': '^[1-9][0-9]*$'},
    },
    'required': ['num', 'den'],
    'additionalProperties': False,
}

SCALAR_SCHEMA = {'oneOf': [{'type': 'number'}, RATIONAL_SCHEMA]}

VECTOR_SCHEMA = {'type': 'array', 'items': SCALAR_SCHEMA}

PARAMS_SCHEMA = {
    'type': 'object',
    'properties': {
        'a': SCALAR_SCHEMA,
        'c': SCALAR_SCHEMA,
        'b': VECTOR_SCHEMA,
        'x': VECTOR_SCHEMA,
    },
    'required': ['a', 'c', 'b', 'x'],
}

TERM_SCHEMA = {
    'type': 'object',
    'properties': {
        'coeff': SCALAR_SCHEMA,
        'a': SCALAR_SCHEMA,
        'c': SCALAR_SCHEMA,
        'b': VECTOR_SCHEMA,
        'x': VECTOR_SCHEMA,
        'beta': {
            'oneOf': [
                {'type': 'null'},
                {
                    'type': 'object',
                    'properties': {'u': SCALAR_SCHEMA, 'v': SCALAR_SCHEMA},
                    'required': ['u', 'v'],
                },
            ],
        },
    },
    'required': ['coeff', 'a', 'c', 'b', 'x', 'beta'],
}

RELATION_SCHEMA = {
    'type': 'object',
    'properties': {
        'family': {'enum': [family.value for family in Family]},
        'n': {'type': 'integer'},
        'p': {'oneOf': [{'type': 'null'}, SCALAR_SCHEMA]},
        'i': {'type': ['integer', 'null'], 'minimum': 1},
        'asserted': {'type': 'boolean'},
        'params': {'oneOf': [{'type': 'null'}, PARAMS_SCHEMA]},
        'terms': {'type': 'array', 'items': TERM_SCHEMA},
    },
    'required': ['family', 'n', 'p', 'i', 'terms'],
}


@dataclass(frozen=True)
class RelationDocument:
    """A decoded relation document"""
    family: Family
    n: int
    p: Optional[Scalar]
    i: Optional[int]
    terms: List[ResolvedTerm]
    params: Optional[FDParams] = None
    asserted: bool = True


def encode_scalar(value):
    if value is None:
        return None
    value = as_scalar(value)
    if isinstance(value, Fraction):
        return {'num': str(value.numerator), 'den': str(value.denominator)}
    return value


def decode_scalar(value):
    if value is None:
        return None
    if isinstance(value, dict):
        return Fraction(int(value['num']), int(value['den']))
    return as_scalar(value)


def encode_params(params):
    return {
        'a': encode_scalar(params.a),
        'c': encode_scalar(params.c),
        'b': [encode_scalar(v) for v in params.b],
        'x': [encode_scalar(v) for v in params.x],
    }


def decode_params(data):
    return FDParams(a=decode_scalar(data['a']), c=decode_scalar(data['c']),
                    b=tuple(decode_scalar(v) for v in data['b']), x=tuple(decode_scalar(v) for v in data['x']))


def encode_term(term, exact=True):
    document = encode_params(term.params)
    document['coeff'] = encode_scalar(term.coefficient) if exact else float(term.coefficient)
    if term.beta is None:
        document['beta'] = None
    else:
        document['beta'] = {'u': encode_scalar(term.beta[0]), 'v': encode_scalar(term.beta[1])}
    return document


def relation_to_document(rel, exact=True, params=None):
    """Encode a relation with its terms resolved at a base point

    Args:
        rel (Relation): Relation to encode
        exact (bool): Write coefficients as exact rationals; otherwise as floats
        params (FDParams): Base point, defaults to rel.params
    Returns:
        dict: JSON-compatible document
    """
    base = params if params is not None else rel.params
    return {
        'family': rel.family.value,
        'n': rel.n,
        'p': encode_scalar(rel.p),
        'i': rel.i,
        'asserted': rel.asserted,
        'params': encode_params(base) if base is not None else None,
        'terms': [encode_term(term, exact) for term in resolve_terms(rel, base)],
    }


def document_to_relation(document):
    """Validate and decode a relation document

    Raises:
        RelationDocumentError: If the document does not match the schema or holds invalid values
    """
    try:
        jsonschema.validate(document, RELATION_SCHEMA)
    except jsonschema.ValidationError as e:
        raise RelationDocumentError('Invalid relation document: {0}'.format(e.message))

    try:
        terms = []
        for entry in document['terms']:
            beta = entry['beta']
            terms.append(ResolvedTerm(
                coefficient=decode_scalar(entry['coeff']),
                params=decode_params(entry),
                beta=(decode_scalar(beta['u']), decode_scalar(beta['v'])) if beta is not None else None,
            ))
        params = decode_params(document['params']) if document.get('params') is not None else None
    except (LauricellaException, ValueError, ZeroDivisionError) as e:
        raise RelationDocumentError('Cannot decode relation document: {0}'.format(e))

    return RelationDocument(family=Family.from_string(document['family']), n=document['n'],
                            p=decode_scalar(document['p']), i=document['i'], terms=terms, params=params,
                            asserted=document.get('asserted', True))


def dumps(document):
    return json.dumps(document, indent=2)


def load_relation_file(path):
    """Read and decode a relation document from a JSON file

    Raises:
        RelationDocumentError: If the file is not JSON or not a valid relation document
    """
    try:
        with open(path, 'r') as f:
            document = json.load(f)
    except ValueError as e:
        raise RelationDocumentError('Relation file {0} is not valid JSON: {1}'.format(path, e))

    logger.debug('Loaded relation document from %s', path)
    return document_to_relation(document)
