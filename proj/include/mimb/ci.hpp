#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <vector>

#include "mimb/dataset.hpp"
#include "mimb/graph.hpp"

namespace mimb {

struct CiQuery {
    VarId x = 0;
    VarId y = 0;
    VarSet z;
    std::size_t dataset = 0;
};

struct CiResult {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
    bool independent = false;
    bool reliable = false;
};

/// Counts N[z][x][y] in one flat array, z outermost.
struct ContingencyTable {
    int rx = 0;
    int ry = 0;
    std::size_t nz = 1;
    std::vector<std::uint32_t> counts;

    ContingencyTable() = default;
    ContingencyTable(int rx_, int ry_, std::size_t nz_)
        : rx(rx_), ry(ry_), nz(nz_), counts(static_cast<std::size_t>(rx_) * static_cast<std::size_t>(ry_) * nz_) {}

    std::uint32_t& at(std::size_t z, int x, int y) {
        return counts[(z * static_cast<std::size_t>(rx) + static_cast<std::size_t>(x)) * static_cast<std::size_t>(ry) +
                      static_cast<std::size_t>(y)];
    }
    std::uint32_t at(std::size_t z, int x, int y) const {
        return counts[(z * static_cast<std::size_t>(rx) + static_cast<std::size_t>(x)) * static_cast<std::size_t>(ry) +
                      static_cast<std::size_t>(y)];
    }
};

ContingencyTable count_table(const Dataset& data, VarId x, VarId y, const VarSet& z);

struct G2 {
    double statistic = 0.0;
    std::size_t dof = 0;
};

/// G² = 2 Σ O ln(O/E) per z-stratum. A stratum adds (r_x-1)(r_y-1) to the
/// degrees of freedom, counting only states with a nonzero margin there;
/// empty strata add nothing.
G2 g2_statistic(const ContingencyTable& t);

/// P(chi2_dof > statistic). dof 0 gives 1.
double chi_square_upper_tail(double statistic, std::size_t dof);

struct G2Options {
    /// Reliable iff rows >= min_rows_per_cell * (cells of the full x*y*z table).
    double min_rows_per_cell = 5.0;
};

CiResult g2_test(const Dataset& data, const CiQuery& q, double alpha, const G2Options& opts = {});

/// Per-dataset test counters, safe for concurrent increments.
class TestLedger {
  public:
    explicit TestLedger(std::size_t n_datasets = 0);

    void record(std::size_t dataset);
    std::size_t size() const { return n_; }
    std::uint64_t count(std::size_t dataset) const;
    std::uint64_t total() const;
    std::vector<std::uint64_t> snapshot() const;

  private:
    std::size_t n_ = 0;
    std::unique_ptr<std::atomic<std::uint64_t>[]> counts_;
};

/// Conditional-independence test provider over n datasets. Every call to
/// test() is recorded once in the ledger.
class CiBackend {
  public:
    virtual ~CiBackend() = default;

    virtual std::size_t datasets() const = 0;
    virtual std::size_t variables() const = 0;
    virtual const std::vector<std::string>& names() const = 0;

    CiResult test(const CiQuery& q, double alpha);
    const TestLedger& ledger() const { return *ledger_; }

  protected:
    explicit CiBackend(std::size_t n_datasets) : ledger_(std::make_unique<TestLedger>(n_datasets)) {}
    virtual CiResult run(const CiQuery& q, double alpha) const = 0;

  private:
    std::unique_ptr<TestLedger> ledger_;
};

/// G² tests against a bundle. The bundle must outlive the backend.
class DataBackend final : public CiBackend {
  public:
    explicit DataBackend(const DatasetBundle& bundle, G2Options opts = {});

    std::size_t datasets() const override { return bundle_->size(); }
    std::size_t variables() const override { return bundle_->schema().size(); }
    const std::vector<std::string>& names() const override { return bundle_->schema().names; }

  protected:
    CiResult run(const CiQuery& q, double alpha) const override;

  private:
    const DatasetBundle* bundle_;
    G2Options opts_;
};

/// d-separation in each experiment's post-intervention graph. Always
/// reliable; p-value 1 when separated, 0 otherwise.
class OracleBackend final : public CiBackend {
  public:
    OracleBackend(const Dag& dag, const InterventionFamily& fam);
    explicit OracleBackend(std::vector<Dag> post_dags);

    std::size_t datasets() const override { return dags_.size(); }
    std::size_t variables() const override { return dags_.front().size(); }
    const std::vector<std::string>& names() const override { return dags_.front().names(); }
    const Dag& post_dag(std::size_t i) const { return dags_.at(i); }

  protected:
    CiResult run(const CiQuery& q, double alpha) const override;

  private:
    std::vector<Dag> dags_;
};

}  // namespace mimb
