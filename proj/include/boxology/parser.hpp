#pragma once
// Textual .bxl front end: recursive-descent parser with source spans and
// item-level error recovery, plus the canonical formatter.

#include <string>
#include <vector>

#include "boxology/document.hpp"

namespace boxology {

struct ParseResult {
    std::optional<Document> doc;
    std::vector<Diagnostic> diagnostics;  // parse + integrity errors
    bool ok() const { return doc.has_value(); }
};

// Codes: P001 unexpected token, P002 unterminated block, P003 message
// arrow without [label]; integrity errors as in build().
ParseResult parse(const std::string& text);

// Canonical pretty-print: nodes (team blocks reconstructed), then edges,
// then frames, each section sorted by id. Idempotent on its own output;
// parse(format(d)) is structurally equal to d.
std::string format(const Document& doc);

}  // namespace boxology
