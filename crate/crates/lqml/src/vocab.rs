//! Namespace constants for the vocabularies this crate reads and writes.
//!
//! The `lbo`, `drmo`, and `daq` bases are project-owned placeholder
//! namespaces; the W3C ones are the standard IRIs.

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const LBO: &str = "http://lqml.dev/ns/lbo#";
pub const DRMO: &str = "http://lqml.dev/ns/drmo#";
pub const DAQ: &str = "http://lqml.dev/ns/daq#";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDF_FIRST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
pub const RDF_REST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
pub const RDF_NIL: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";

pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
pub const RDFS_COMMENT: &str = "http://www.w3.org/2000/01/rdf-schema#comment";

pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
pub const XSD_DATE_TIME: &str = "http://www.w3.org/2001/XMLSchema#dateTime";

pub const LBO_BLUEPRINT: &str = "http://lqml.dev/ns/lbo#Blueprint";
pub const LBO_NAME: &str = "http://lqml.dev/ns/lbo#name";
pub const LBO_RELATED_TO: &str = "http://lqml.dev/ns/lbo#relatedTo";
pub const LBO_HAS_RESULT: &str = "http://lqml.dev/ns/lbo#hasResult";
pub const LBO_OUTPUT_RESULT: &str = "http://lqml.dev/ns/lbo#OutputResult";
pub const LBO_RATIO: &str = "http://lqml.dev/ns/lbo#Ratio";
pub const LBO_ACTION_RESULTS: &str = "http://lqml.dev/ns/lbo#ActionResults";
pub const LBO_HAS_OUTPUT_PARAMETERS: &str = "http://lqml.dev/ns/lbo#hasOutputParameters";
pub const LBO_HAS_PATTERN_MATCHING_RULE: &str = "http://lqml.dev/ns/lbo#hasPatternMatchingRule";
pub const LBO_HAS_PARAMETERS: &str = "http://lqml.dev/ns/lbo#hasParameters";
pub const LBO_TYPE_OF: &str = "http://lqml.dev/ns/lbo#TypeOf";
pub const LBO_FUNCTION_CALL: &str = "http://lqml.dev/ns/lbo#FunctionCall";
pub const LBO_FUNCTION_NAME: &str = "http://lqml.dev/ns/lbo#functionName";
pub const LBO_CONDITION_GROUP: &str = "http://lqml.dev/ns/lbo#ConditionGroup";
pub const LBO_OPERATOR: &str = "http://lqml.dev/ns/lbo#operator";
pub const LBO_HAS_OPERANDS: &str = "http://lqml.dev/ns/lbo#hasOperands";
pub const LBO_ON_TERM: &str = "http://lqml.dev/ns/lbo#onTerm";
pub const LBO_VALUE: &str = "http://lqml.dev/ns/lbo#value";
pub const LBO_MAP: &str = "http://lqml.dev/ns/lbo#Map";
pub const LBO_COUNT: &str = "http://lqml.dev/ns/lbo#Count";
pub const LBO_UNIQUE: &str = "http://lqml.dev/ns/lbo#Unique";

pub const DRMO_RULE: &str = "http://lqml.dev/ns/drmo#Rule";
pub const DRMO_CONDITION: &str = "http://lqml.dev/ns/drmo#Condition";
pub const DRMO_IS_COMPOSED_OF: &str = "http://lqml.dev/ns/drmo#isComposedOf";
pub const DRMO_TRIGGERS: &str = "http://lqml.dev/ns/drmo#triggers";

pub const DAQ_METRIC: &str = "http://lqml.dev/ns/daq#Metric";
pub const DAQ_OBSERVATION: &str = "http://lqml.dev/ns/daq#Observation";
pub const DAQ_HAS_OBSERVATION: &str = "http://lqml.dev/ns/daq#hasObservation";
pub const DAQ_VALUE: &str = "http://lqml.dev/ns/daq#value";
pub const DAQ_COMPUTED_ON: &str = "http://lqml.dev/ns/daq#computedOn";
pub const DAQ_DATE_COMPUTED: &str = "http://lqml.dev/ns/daq#dateComputed";
