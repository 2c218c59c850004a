"""ucat: controlled use-case statements -> ontology -> requirement patterns.

The pipeline, end to end:

    rules    = ucat.parse_rus(rus_text)
    result   = ucat.run_pipeline(rus_text, usecase_text, types_text, base=...)
    document = ucat.serialize_manchester(result.ontology)
    verdict  = ucat.eval_ask(ucat.parse_query(query_text), result.graph)
"""

from .catalog import load_catalog, load_catalog_dir, match_patterns
from .ontology import (
    Literal,
    Ontology,
    Triple,
    build_ontology,
    parse_manchester,
    serialize_manchester,
    to_triples,
)
from .pipeline import PipelineResult, run_extraction, run_pipeline
from .query import (
    SelectResult,
    brute_force_eval,
    eval_ask,
    eval_select,
    parse_query,
)
from .rus import RusFile, compile_matcher, parse_rus
from .typemap import parse_types, validate_assignment
from .usecase import (
    EntitySet,
    TupleStatement,
    expand_multi,
    extract_entities,
    extract_tuples,
    parse_use_case,
    parse_usecase_file,
)

__version__ = "0.1.0"

__all__ = [
    "Literal",
    "Ontology",
    "Triple",
    "EntitySet",
    "TupleStatement",
    "RusFile",
    "SelectResult",
    "PipelineResult",
    "parse_rus",
    "compile_matcher",
    "parse_usecase_file",
    "parse_use_case",
    "expand_multi",
    "extract_entities",
    "extract_tuples",
    "parse_types",
    "validate_assignment",
    "build_ontology",
    "serialize_manchester",
    "parse_manchester",
    "to_triples",
    "parse_query",
    "eval_ask",
    "eval_select",
    "brute_force_eval",
    "load_catalog",
    "load_catalog_dir",
    "match_patterns",
    "run_extraction",
    "run_pipeline",
    "__version__",
]
