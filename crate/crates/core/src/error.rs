use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: unknown vertex \"{name}\"")]
    UnknownVertex { name: String, line: usize },

    #[error("line {line}: unknown arrow \"{name}\"")]
    UnknownArrow { name: String, line: usize },

    #[error("line {line}: duplicate {kind} \"{name}\"")]
    Duplicate {
        kind: &'static str,
        name: String,
        line: usize,
    },

    #[error("line {line}: relation \"{beta} {alpha}\" is not composable (target of {alpha} differs from source of {beta})")]
    NotComposable {
        beta: String,
        alpha: String,
        line: usize,
    },

    #[error("the quiver has no vertices")]
    EmptyQuiver,

    #[error("invalid permutation data: {0}")]
    InvalidPermutation(String),

    #[error("not gentle at vertex \"{vertex}\": {detail}")]
    NotGentle { vertex: String, detail: String },

    #[error("not a gentle order: permitted thread {} at vertex \"{vertex}\"", fmt_thread(.thread))]
    NotGentleOrder { thread: Vec<String>, vertex: String },

    #[error("input is disconnected ({components} components); this operation needs a connected order")]
    Disconnected { components: usize },

    #[error("vertex \"{0}\" is not a transition vertex")]
    NotTransitionVertex(String),

    #[error("vertex set is not kappa-stable: kappa({witness}) = {image} lies outside it")]
    NotKappaStable { witness: String, image: String },

    #[error("unknown vertex \"{0}\"")]
    NoSuchVertex(String),

    #[error("instance has {arrows} arrows, above the path-enumeration bound {bound}")]
    InstanceTooLarge { arrows: usize, bound: usize },

    #[error("random generation gave up after {attempts} rejected samples")]
    GenerationFailed { attempts: usize },

    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

fn fmt_thread(thread: &[String]) -> String {
    if thread.is_empty() {
        "(trivial)".to_owned()
    } else {
        thread.join(" ")
    }
}
