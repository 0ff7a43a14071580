#pragma once

#include <stdexcept>
#include <string>

namespace fibspec {

// All computational failures map to CLI exit code 2; input/usage problems to 1.
class error : public std::runtime_error {
public:
    error(int exit_code, const std::string& what) : std::runtime_error(what), code_(exit_code) {}
    int exit_code() const { return code_; }

private:
    int code_;
};

class domain_error : public error {
public:
    explicit domain_error(const std::string& what) : error(2, what) {}
};

class unsupported_coupling_error : public error {
public:
    explicit unsupported_coupling_error(const std::string& what) : error(2, what) {}
};

// Band scan could not reach the expected band count at maximum resolution.
class resolution_error : public error {
public:
    resolution_error(const std::string& what, int found, int expected)
        : error(2, what), found_(found), expected_(expected) {}
    int found() const { return found_; }
    int expected() const { return expected_; }

private:
    int found_;
    int expected_;
};

// Hierarchy construction found an impossible sign structure inside a parent band.
class structural_error : public error {
public:
    structural_error(const std::string& what, int parent_level, double parent_lo, double parent_hi)
        : error(2, what), level_(parent_level), lo_(parent_lo), hi_(parent_hi) {}
    int parent_level() const { return level_; }
    double parent_lo() const { return lo_; }
    double parent_hi() const { return hi_; }

private:
    int level_;
    double lo_, hi_;
};

class convergence_error : public error {
public:
    explicit convergence_error(const std::string& what) : error(2, what) {}
};

class resource_error : public error {
public:
    explicit resource_error(const std::string& what) : error(2, what) {}
};

class io_error : public error {
public:
    explicit io_error(const std::string& what) : error(1, what) {}
};

}  // namespace fibspec
