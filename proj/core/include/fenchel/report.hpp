#ifndef FENCHEL_REPORT_HPP
#define FENCHEL_REPORT_HPP

#include <string>
#include <vector>

#include "fenchel/extreal.hpp"

namespace fenchel {

/// Relation a law asserts between its recorded sides.
enum class Relation { Eq, Le, Ge, Equiv, Value };

enum class Verdict { Pass, Fail, NotApplicable };

/// One checked law instance.  Boolean sides (for Equiv laws) are encoded as
/// the rationals 1 / 0.  `note` carries auxiliary detail: the reason a
/// hypothesis failed for not-applicable verdicts, or convention flags
/// (e.g. "both sides -inf").
struct LawReport {
    std::string law;
    std::string instance;
    Relation relation = Relation::Eq;
    ExtReal lhs;
    ExtReal rhs;
    Verdict verdict = Verdict::Pass;
    std::string note;
};

const char* to_string(Relation r);
const char* to_string(Verdict v);

/// Build a report whose verdict is derived from the relation between the
/// sides (Pass iff the relation holds exactly).
LawReport checked_report(std::string law, std::string instance, Relation rel,
                         ExtReal lhs, ExtReal rhs, std::string note = {});

/// Equivalence-of-booleans report.
LawReport equiv_report(std::string law, std::string instance, bool lhs, bool rhs,
                       std::string note = {});

/// Not-applicable report; `why` names the unmet hypothesis.
LawReport na_report(std::string law, std::string instance, std::string why);

/// "law-id | instance | lhs | rhs | verdict" line.
std::string render_text_line(const LawReport& r);

struct ReportSummary {
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t not_applicable = 0;
};
ReportSummary summarize(const std::vector<LawReport>& reports);

/// Full text rendering: one line per report plus a trailing summary line.
std::string render_text(const std::vector<LawReport>& reports);

/// Machine-readable JSON rendering ({"reports": [...], "summary": {...}}),
/// byte-deterministic for a given report list.
std::string render_json(const std::vector<LawReport>& reports);

}  // namespace fenchel

#endif
