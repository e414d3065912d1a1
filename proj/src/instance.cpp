#include "proxima/instance.hpp"

#include <array>
#include <cmath>

#include "proxima/error.hpp"

namespace proxima {

std::vector<std::string> first_argument_names(std::size_t dimension) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= dimension; ++i) names.push_back("a" + std::to_string(i));
    return names;
}

std::vector<std::string> pair_argument_names(std::size_t dimension) {
    auto names = first_argument_names(dimension);
    for (std::size_t i = 1; i <= dimension; ++i) names.push_back("b" + std::to_string(i));
    return names;
}

ProximityFunction::ProximityFunction(expr::Expression expression, std::size_t dimension)
    : bound_(std::move(expression), pair_argument_names(dimension)), dimension_(dimension) {}

double ProximityFunction::operator()(const Point& a, const Point& b) const {
    constexpr std::size_t kInline = 8;
    const std::size_t k = dimension_;
    if (a.dimension() != k || b.dimension() != k)
        throw InstanceError("proximity function applied to points of the wrong dimension");
    if (2 * k <= kInline) {
        std::array<double, kInline> slots{};
        for (std::size_t i = 0; i < k; ++i) {
            slots[i] = a[i];
            slots[k + i] = b[i];
        }
        return bound_(std::span<const double>(slots.data(), 2 * k));
    }
    std::vector<double> slots(2 * k);
    for (std::size_t i = 0; i < k; ++i) {
        slots[i] = a[i];
        slots[k + i] = b[i];
    }
    return bound_(slots);
}

Mapping::Mapping(std::vector<MappingBranch> branches, std::size_t dimension)
    : branches_(std::move(branches)), dimension_(dimension) {
    if (branches_.empty()) throw InstanceError("mapping needs at least one branch");
    const auto names = first_argument_names(dimension);
    for (std::size_t b = 0; b < branches_.size(); ++b) {
        const auto& branch = branches_[b];
        if (branch.values.size() != dimension)
            throw InstanceError("mapping branch " + std::to_string(b + 1) + " has " +
                                std::to_string(branch.values.size()) + " coordinate(s), expected " +
                                std::to_string(dimension));
        Compiled c;
        if (branch.guard) c.guard.emplace(*branch.guard, names);
        for (const auto& v : branch.values) c.values.emplace_back(v, names);
        compiled_.push_back(std::move(c));
    }
}

Point Mapping::operator()(const Point& x) const {
    if (x.dimension() != dimension_) throw InstanceError("mapping applied to a point of the wrong dimension");
    for (const auto& branch : compiled_) {
        if (branch.guard && (*branch.guard)(x.coords()) < 0.0) continue;
        std::vector<double> out;
        out.reserve(dimension_);
        for (const auto& v : branch.values) out.push_back(v(x.coords()));
        return Point(std::move(out));
    }
    throw MappingError("no mapping branch is active at " + to_string(x));
}

const Mapping& ProblemInstance::F() const {
    if (!mapping) throw MappingError("instance '" + name + "' declares no mapping");
    return *mapping;
}

void ProblemInstance::validate() const {
    if (re.dimension() != omega.dimension())
        throw InstanceError("sets '" + re.label() + "' and '" + omega.label() +
                            "' differ in dimension");
    if (phi.dimension() != re.dimension())
        throw InstanceError("proximity function dimension does not match the sets");
    if (mapping && mapping->dimension() != re.dimension())
        throw InstanceError("mapping dimension does not match the sets");
    if (!(eps_eq > 0.0) || !std::isfinite(eps_eq)) throw InstanceError("eps_eq must be positive");
    if (eps_range && (!(*eps_range > 0.0) || !std::isfinite(*eps_range)))
        throw InstanceError("eps_range must be positive");
}

ProblemInstance make_instance(std::string name, PointSet re, PointSet omega, ProximityFunction phi,
                              std::optional<Mapping> mapping, double eps_eq,
                              std::optional<double> eps_range, Assumptions assumptions) {
    ProblemInstance inst{std::move(name), std::move(re),     std::move(omega), std::move(phi),
                         std::move(mapping), eps_eq, eps_range, assumptions};
    inst.validate();
    return inst;
}

namespace {

bool same_optional_expr(const std::optional<expr::Expression>& a,
                        const std::optional<expr::Expression>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || a->structurally_equal(*b);
}

bool same_mapping(const std::optional<Mapping>& a, const std::optional<Mapping>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    const auto& x = a->branches();
    const auto& y = b->branches();
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!same_optional_expr(x[i].guard, y[i].guard)) return false;
        if (x[i].values.size() != y[i].values.size()) return false;
        for (std::size_t k = 0; k < x[i].values.size(); ++k)
            if (!x[i].values[k].structurally_equal(y[i].values[k])) return false;
    }
    return true;
}

}  // namespace

bool equivalent(const ProblemInstance& a, const ProblemInstance& b) {
    return a.name == b.name && a.re == b.re && a.omega == b.omega &&
           a.phi.expression().structurally_equal(b.phi.expression()) &&
           same_mapping(a.mapping, b.mapping) && a.eps_eq == b.eps_eq &&
           a.eps_range == b.eps_range && a.assumptions == b.assumptions;
}

ProblemInstance scale_phi(const ProblemInstance& instance, double factor) {
    ProblemInstance scaled = instance;
    auto e = expr::Expression::parse(expr::format_real(factor) + " * (" +
                                     instance.phi.expression().source() + ")");
    scaled.phi = ProximityFunction(std::move(e), instance.dimension());
    return scaled;
}

}  // namespace proxima
