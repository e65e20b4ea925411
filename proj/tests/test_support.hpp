#pragma once

#include <catch2/catch_amalgamated.hpp>

#include "segre/common.hpp"

struct ErrorKindMatcher : Catch::Matchers::MatcherGenericBase {
    segre::ErrorKind kind;

    explicit ErrorKindMatcher(segre::ErrorKind k) : kind(k) {}
    bool match(const segre::Error& e) const { return e.kind() == kind; }
    std::string describe() const override {
        return std::string("has error kind ") + segre::error_kind_name(kind);
    }
};

inline ErrorKindMatcher ErrorKindIs(segre::ErrorKind k) { return ErrorKindMatcher{k}; }
