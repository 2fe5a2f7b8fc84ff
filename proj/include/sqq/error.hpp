#ifndef SQQ_ERROR_HPP
#define SQQ_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sqq {

// Every library error carries a short machine-readable kind, used by the CLI
// for its error records.
class error : public std::runtime_error {
public:
    error(const char* kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    const char* kind() const noexcept { return kind_; }

private:
    const char* kind_;
};

struct precondition_error : error {
    explicit precondition_error(const std::string& what) : error("precondition", what) {}
};

struct size_bound_error : error {
    explicit size_bound_error(const std::string& what) : error("size_bound", what) {}
};

/// A map satisfied the square-quotient condition but is neither constant nor
/// affine composed with Frobenius. Never expected; always a bug.
struct not_carlitz_error : error {
    explicit not_carlitz_error(const std::string& what) : error("not_carlitz", what) {}
};

struct singular_error : error {
    explicit singular_error(const std::string& what) : error("singular", what) {}
};

struct checkpoint_error : error {
    explicit checkpoint_error(const std::string& what) : error("checkpoint", what) {}
};

struct interrupted_error : error {
    explicit interrupted_error(const std::string& what) : error("interrupted", what) {}
};

struct budget_exceeded_error : error {
    explicit budget_exceeded_error(const std::string& what) : error("budget_exceeded", what) {}
};

struct parse_error : error {
    parse_error(std::size_t line, const std::string& what)
        : error("parse", "line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct reduction_error : error {
    reduction_error(std::size_t index, const std::string& what)
        : error("reduction", what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

}  // namespace sqq

#endif  // SQQ_ERROR_HPP
