#ifndef PRIMDIV_CLI_HPP
#define PRIMDIV_CLI_HPP

#include "primdiv/cyclotomic.hpp"
#include "primdiv/verifier.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace primdiv::cli {

enum class Format { Json, Csv, Text };

Format parse_format(std::string const & s);
std::string to_string(Format f);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int error = 1;
inline constexpr int invalid = 2;
inline constexpr int inconclusive = 3;
inline constexpr int partial = 4;
inline constexpr int exception = 5;
} // namespace exit_code

struct RunConfig {
    std::string command;
    long p = 0;
    long q = 0;
    std::uint64_t n = 0;
    long q_lo = 2;
    long q_hi = 2;
    long q_max = 21;
    std::uint64_t n_cap = verifier::kFullCap;
    Precision prec_start = 128;
    Precision prec_max = 4096;
    unsigned jobs = 1;
    std::string cache_dir;
    std::string out;
    Format format = Format::Json;
    bool timestamp = true;

    PrecisionPolicy policy() const { return {prec_start, prec_max}; }
    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/* Plain-value mirror of a VerificationReport, as written to disk. Balls
 * become their truncated or rounded table columns.
 */
struct RowDoc {
    std::uint64_t k = 0;
    std::uint64_t n = 0;
    std::optional<long> dreq_log_int;
    std::optional<double> dact_log_1dp;
    bool margin_ok = false;
    bool operator==(RowDoc const &) const = default;
};

struct RangeDoc {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::string method;
    std::string outcome;
    std::string note;
    bool operator==(RangeDoc const &) const = default;
};

struct ReportDoc {
    long p = 0;
    long q = 0;
    std::string kind;
    std::string height;
    std::uint64_t n_cap = 0;
    std::vector<RangeDoc> ranges;
    std::vector<std::uint64_t> exceptions;
    std::vector<RowDoc> convergents;
    std::string conclusion;
    std::uint64_t conclusion_n = 0;
    std::string reason;
    bool partial = false;
    bool operator==(ReportDoc const &) const = default;
};

RowDoc row_doc(realcf::ConvergentRecord const & row);
ReportDoc report_doc(verifier::VerificationReport const & report);

nlohmann::json to_json(ReportDoc const & doc);
ReportDoc report_from_json(nlohmann::json const & j);

inline constexpr char const * kCsvHeader = "k,n,dreq_log_trunc,dact_log_trunc";
void write_rows_csv(std::ostream & os, std::vector<RowDoc> const & rows);
void write_rows_text(std::ostream & os, std::vector<RowDoc> const & rows);
void write_report_text(std::ostream & os, ReportDoc const & doc);

struct Table2Group {
    long q_lo = 0;
    std::optional<long> q_hi; ///< empty for the open final group
    std::uint64_t nq = 0;
    std::string label() const;
};

/// Consecutive q in [2, q_max] sharing n_q; a final group with n_q = 30 is left open.
std::vector<Table2Group> table2_groups(long q_max, PrecisionPolicy const & policy = {});

/* One text file per n holding decimal coefficients of Φ_n, g_n and g_n',
 * closed by a crc32 line over everything before it. A file that fails to
 * parse or checksum is ignored.
 */
class DirectoryStore : public PolynomialStore {
  public:
    explicit DirectoryStore(std::filesystem::path dir);
    std::optional<CyclotomicEntry> load(std::uint64_t n) override;
    void save(CyclotomicEntry const & entry) override;
    std::filesystem::path path_for(std::uint64_t n) const;

  private:
    std::filesystem::path dir_;
};

std::string serialize_entry(CyclotomicEntry const & entry);
std::optional<CyclotomicEntry> parse_entry(std::string const & text);

/// Directory from PRIMDIV_CACHE_DIR if set, else the configured one.
std::string effective_cache_dir(RunConfig const & cfg);

int cmd_check(RunConfig const & cfg, std::ostream & os);
int cmd_verify(RunConfig const & cfg, std::ostream & os);
int cmd_table1(RunConfig const & cfg, std::ostream & os);
int cmd_table2(RunConfig const & cfg, std::ostream & os);
int cmd_scan(RunConfig const & cfg, std::ostream & os);
int cmd_convergents(RunConfig const & cfg, std::ostream & os);
int cmd_gn_cache(RunConfig const & cfg, std::ostream & os);

/// Installs the cache store, runs cfg.command, writes to cfg.out or os.
int run(RunConfig const & cfg, std::ostream & os, std::ostream & err);

} // namespace primdiv::cli

#endif
