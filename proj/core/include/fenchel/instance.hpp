#ifndef FENCHEL_INSTANCE_HPP
#define FENCHEL_INSTANCE_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fenchel/dualmap.hpp"
#include "fenchel/extfn.hpp"
#include "fenchel/geometry.hpp"
#include "fenchel/group.hpp"
#include "fenchel/regclose.hpp"

namespace fenchel {

/// All validation problems found in one instance file, one message each.
struct InstanceError : std::runtime_error {
    explicit InstanceError(std::vector<std::string> messages);
    std::vector<std::string> messages;
};

/// A named sample grid: a uniformly sampled circle or a strictly increasing
/// interval grid.
struct GridSpec {
    enum class Kind { Circle, Interval };
    Kind kind = Kind::Circle;
    std::optional<CircleGrid> circle;
    std::optional<IntervalGrid> interval;
    const Carrier& carrier() const {
        return kind == Kind::Circle ? circle->carrier() : interval->carrier();
    }
};

/// Golden values a run may pin.  Values are keyed per operation: test
/// function name (conjugate), carrier point id (regularize / biconjugate /
/// infconv), slope literal (Legendre), base index (circle geometry, exact
/// "a + pi*b" rendering).  A mismatch surfaces as a fail verdict, never as
/// a validation error.
struct Expect {
    bool present = false;
    std::map<std::string, ExtReal> values;
    std::map<std::string, std::string> geo_values;
    std::map<std::string, std::vector<std::string>> attainers;
    std::map<std::string, std::string> certificates;
    std::optional<bool> member;
};

/// One circle-geometry query: base sample, covector slope, certificate
/// neighborhood radius in grid steps.
struct GeometryItem {
    std::size_t x = 0;
    Rational x_star;
    std::size_t radius = 1;
};

/// One entry of the "runs" list, fully resolved against the instance's
/// object tables.  Which bindings are populated depends on `op`; the parser
/// enforces the per-op requirements.
struct RunSpec {
    std::size_t index = 0;
    std::string op;
    std::string label;

    std::string f, g, phi, psi, family, family2, map, group, grid, f_on_dual;
    std::vector<std::string> phis;
    Rational alpha{1};
    Rational beta{0};
    std::vector<Rational> alphas;
    std::vector<Rational> lambdas;
    std::vector<Rational> shifts;
    std::vector<std::vector<Rational>> coeff_sets;
    std::vector<Rational> slopes;
    std::vector<GeometryItem> items;
    Expect expect;
};

/// Operation vocabulary for runs.  Compute ops mirror the CLI subcommands;
/// laws.* ops are executed by `check` only.
const std::vector<std::string>& run_op_vocabulary();

/// A parsed, fully cross-referenced instance file.
struct InstanceFile {
    std::map<std::string, Carrier> carriers;
    std::map<std::string, ExtFn> functions;
    std::map<std::string, TestFamily> families;
    std::map<std::string, CarrierMap> maps;
    std::map<std::string, GridSpec> grids;
    std::map<std::string, GroupSpec> groups;
    std::vector<RunSpec> runs;

    const ExtFn& function(const std::string& name) const;
    const TestFamily& family(const std::string& name) const;
    const CarrierMap& carrier_map(const std::string& name) const;
    const GridSpec& grid(const std::string& name) const;
    const GroupSpec& group(const std::string& name) const;
};

/// Parse and validate instance JSON.  Collects every problem it can find and
/// throws InstanceError when any exist.  `origin` names the source (file
/// path) for error messages.
InstanceFile parse_instance(const std::string& json_text, const std::string& origin);

/// Load from a file path.
InstanceFile load_instance(const std::string& path);

}  // namespace fenchel

#endif
