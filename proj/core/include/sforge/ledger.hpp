#pragma once

/// \file ledger.hpp
/// Exact-arithmetic credit accounting for the clustering passes.  Every
/// amount is a rational built from double values (doubles are dyadic, so
/// the conversion is lossless), which makes the conservation identity
/// minted == spent + residual checkable with ==, not a tolerance.

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sforge {

using Credit = boost::multiprecision::cpp_rational;

// Exact value of x; throws input_error on non-finite or negative input.
Credit credit_from(double x);

double credit_to_double(const Credit& c);

enum class LedgerOp { kMint, kTransfer, kSpend };

struct LedgerEvent {
  LedgerOp op = LedgerOp::kMint;
  int from = -1;  // -1 on mint
  int to = -1;    // -1 on spend
  Credit amount;
  std::string memo;
};

// Append-only double-entry book.  Balances can never go negative: any
// transfer or spend that overdraws throws invariant_violation carrying
// the tail of the event log.
class CreditLedger {
 public:
  int open_account(const std::string& label);
  int account_count() const { return static_cast<int>(balance_.size()); }

  void mint(int account, const Credit& amount, const std::string& memo);
  void transfer(int from, int to, const Credit& amount,
                const std::string& memo);
  void spend(int account, const Credit& amount, const std::string& memo);
  // Transfers min(amount, balance(from)) and returns the moved value.
  Credit transfer_up_to(int from, int to, const Credit& amount,
                        const std::string& memo);

  const Credit& balance(int account) const;
  const std::string& label(int account) const;

  Credit minted_total() const { return minted_; }
  Credit spent_total() const { return spent_; }
  Credit residual_total() const;  // sum of all balances

  bool all_nonnegative() const;
  // minted == spent + residual, exactly.
  bool conserved() const;

  const std::vector<LedgerEvent>& events() const { return events_; }
  // Human-readable tail of the event log, newest last.
  std::string dump_tail(size_t count = 40) const;

 private:
  void check_account(int account, const char* who) const;

  std::vector<Credit> balance_;
  std::vector<std::string> label_;
  Credit minted_{0};
  Credit spent_{0};
  std::vector<LedgerEvent> events_;
};

}  // namespace sforge
