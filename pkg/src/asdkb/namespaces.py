"""IRI namespaces and the handful of standard vocabulary terms the KB reuses."""

CLASS_NS = "http://w3id.org/asdkb/ontology/class/"
PROPERTY_NS = "http://w3id.org/asdkb/ontology/property/"
INSTANCE_NS = "http://w3id.org/asdkb/instance/"

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"
RDFS_COMMENT = "http://www.w3.org/2000/01/rdf-schema#comment"
RDFS_SUBCLASSOF = "http://www.w3.org/2000/01/rdf-schema#subClassOf"
OWL_EQUIVALENTCLASS = "http://www.w3.org/2002/07/owl#equivalentClass"

XSD_FLOAT = "http://www.w3.org/2001/XMLSchema#float"
XSD_INTEGER = "http://www.w3.org/2001/XMLSchema#integer"

#: Predicates exempt from domain/range validation (standard vocabulary
#: reused without declaration in the schema).
BUILTIN_PREDICATES = frozenset(
    {RDF_TYPE, RDFS_LABEL, RDFS_COMMENT, RDFS_SUBCLASSOF, OWL_EQUIVALENTCLASS}
)


def class_iri(local: str) -> str:
    return CLASS_NS + local


def property_iri(local: str) -> str:
    return PROPERTY_NS + local


def instance_iri(local: str) -> str:
    return INSTANCE_NS + local
