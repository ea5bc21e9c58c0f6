#pragma once

#include <string>

namespace hsjet {

/// Outcome of an axiom verification: ok, or a witness naming the first failure.
struct CheckResult {
    bool ok = true;
    std::string witness;

    static CheckResult pass() { return {}; }
    static CheckResult fail(std::string w) { return {false, std::move(w)}; }
    explicit operator bool() const { return ok; }
};

} // namespace hsjet
