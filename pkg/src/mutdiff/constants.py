ARITHMETIC_OPERATORS = ("+", "-", "*", "/", "%")
RELATIONAL_OPERATORS = ("<", "<=", ">", ">=", "==", "!=")
LOGICAL_OPERATORS = ("and", "or")
UNARY_OPERATORS = ("-", "not")

# Binding strength used by the parser; higher binds tighter
BINARY_PRECEDENCE = {
    "or": 1,
    "and": 2,
    "<": 3,
    "<=": 3,
    ">": 3,
    ">=": 3,
    "==": 3,
    "!=": 3,
    "+": 4,
    "-": 4,
    "*": 5,
    "/": 5,
    "%": 5,
}

KEYWORDS = frozenset(
    {"program", "input", "output", "int", "bool", "if", "else", "while", "true", "false", "and", "or", "not"}
)

# Words that belong to languages the frontend deliberately does not accept
UNSUPPORTED_KEYWORDS = frozenset(
    {
        "for",
        "do",
        "break",
        "continue",
        "return",
        "function",
        "def",
        "class",
        "new",
        "null",
        "float",
        "double",
        "string",
        "char",
        "void",
        "switch",
        "case",
    }
)

LOOP_FLAG_PREFIX = "loop_"
MUTANT_SUFFIX = "_M"

SOURCE_SUFFIX = ".mlang"
SMT_SUFFIX = ".smt2"

EXIT_OK = 0
EXIT_PARSE_ERROR = 1
EXIT_WITNESS_FAILURE = 2
# `mutdiff run` only: executing the program raised an ExecutionException
EXIT_EXECUTION_ERROR = 3
