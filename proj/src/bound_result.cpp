#include "bmdist/bound_result.hpp"

#include <array>
#include <utility>

#include "bmdist/errors.hpp"

namespace bmdist {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 9> kNames{{
    {Method::exact, "exact"},
    {Method::analytic_lp, "analytic-lp"},
    {Method::witness, "witness"},
    {Method::optimizer, "optimizer"},
    {Method::chained, "chained"},
    {Method::taschuk, "taschuk"},
    {Method::youssef, "youssef"},
    {Method::xue_l1, "xue-l1"},
    {Method::sqrt_pow2, "sqrt-pow2"},
}};

}  // namespace

std::string_view method_name(Method m) {
    for (const auto& [method, name] : kNames)
        if (method == m) return name;
    return "unknown";
}

Method method_from_name(std::string_view name) {
    for (const auto& [method, n] : kNames)
        if (n == name) return method;
    throw ParseError("unknown bound method '" + std::string(name) + "'");
}

}  // namespace bmdist
