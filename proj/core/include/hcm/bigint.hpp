#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "hcm/errors.hpp"

namespace hcm {

using BigInt = boost::multiprecision::cpp_int;

inline auto to_string(const BigInt& x) -> std::string
{
    return x.str();
}

/// Numbers that fit in 64 bits are written as JSON integers, others as
/// decimal strings.
inline auto bigint_to_json(const BigInt& x) -> nlohmann::json
{
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return x.str();
}

inline auto bigint_from_json(const nlohmann::json& j) -> BigInt
{
    if (j.is_string())
        return BigInt(j.get<std::string>());
    if (j.is_number_unsigned())
        return BigInt(j.get<std::uint64_t>());
    if (j.is_number_integer())
        return BigInt(j.get<std::int64_t>());
    throw PreconditionError("expected an integer or a decimal string, got " + j.dump());
}

} // namespace hcm
