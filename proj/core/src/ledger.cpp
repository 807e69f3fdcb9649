#include "sforge/ledger.hpp"

#include <cmath>
#include <sstream>

#include "sforge/errors.hpp"

namespace sforge {

Credit credit_from(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw input_error("credit amounts must be finite and non-negative, got " +
                      std::to_string(x));
  }
  return Credit(x);
}

double credit_to_double(const Credit& c) {
  return static_cast<double>(c);
}

int CreditLedger::open_account(const std::string& label) {
  balance_.emplace_back(0);
  label_.push_back(label);
  return static_cast<int>(balance_.size()) - 1;
}

void CreditLedger::check_account(int account, const char* who) const {
  if (account < 0 || account >= static_cast<int>(balance_.size())) {
    throw invariant_violation(std::string(who) + ": unknown account " +
                              std::to_string(account));
  }
}

void CreditLedger::mint(int account, const Credit& amount,
                        const std::string& memo) {
  check_account(account, "mint");
  if (amount < 0) throw invariant_violation("mint: negative amount; " + memo);
  balance_[static_cast<size_t>(account)] += amount;
  minted_ += amount;
  events_.push_back({LedgerOp::kMint, -1, account, amount, memo});
}

void CreditLedger::transfer(int from, int to, const Credit& amount,
                            const std::string& memo) {
  check_account(from, "transfer");
  check_account(to, "transfer");
  if (amount < 0) {
    throw invariant_violation("transfer: negative amount; " + memo);
  }
  Credit& src = balance_[static_cast<size_t>(from)];
  if (src < amount) {
    throw invariant_violation(
        "transfer overdraws " + label_[static_cast<size_t>(from)] + " by " +
        Credit(amount - src).str() + "; " + memo + "\n" + dump_tail());
  }
  src -= amount;
  balance_[static_cast<size_t>(to)] += amount;
  events_.push_back({LedgerOp::kTransfer, from, to, amount, memo});
}

void CreditLedger::spend(int account, const Credit& amount,
                         const std::string& memo) {
  check_account(account, "spend");
  if (amount < 0) throw invariant_violation("spend: negative amount; " + memo);
  Credit& src = balance_[static_cast<size_t>(account)];
  if (src < amount) {
    throw invariant_violation(
        "spend overdraws " + label_[static_cast<size_t>(account)] + " by " +
        Credit(amount - src).str() + "; " + memo + "\n" + dump_tail());
  }
  src -= amount;
  spent_ += amount;
  events_.push_back({LedgerOp::kSpend, account, -1, amount, memo});
}

Credit CreditLedger::transfer_up_to(int from, int to, const Credit& amount,
                                    const std::string& memo) {
  check_account(from, "transfer_up_to");
  Credit take = balance_[static_cast<size_t>(from)];
  if (take > amount) take = amount;
  if (take > 0) transfer(from, to, take, memo);
  return take;
}

const Credit& CreditLedger::balance(int account) const {
  check_account(account, "balance");
  return balance_[static_cast<size_t>(account)];
}

const std::string& CreditLedger::label(int account) const {
  check_account(account, "label");
  return label_[static_cast<size_t>(account)];
}

Credit CreditLedger::residual_total() const {
  Credit sum{0};
  for (const Credit& b : balance_) sum += b;
  return sum;
}

bool CreditLedger::all_nonnegative() const {
  for (const Credit& b : balance_) {
    if (b < 0) return false;
  }
  return true;
}

bool CreditLedger::conserved() const {
  return minted_ == spent_ + residual_total();
}

std::string CreditLedger::dump_tail(size_t count) const {
  std::ostringstream os;
  size_t start = events_.size() > count ? events_.size() - count : 0;
  os << "ledger tail (" << events_.size() << " events total):\n";
  for (size_t i = start; i < events_.size(); ++i) {
    const LedgerEvent& e = events_[i];
    switch (e.op) {
      case LedgerOp::kMint:
        os << "  mint -> " << label_[static_cast<size_t>(e.to)];
        break;
      case LedgerOp::kTransfer:
        os << "  move " << label_[static_cast<size_t>(e.from)] << " -> "
           << label_[static_cast<size_t>(e.to)];
        break;
      case LedgerOp::kSpend:
        os << "  spend " << label_[static_cast<size_t>(e.from)];
        break;
    }
    os << " : " << static_cast<double>(e.amount) << " (" << e.memo << ")\n";
  }
  return os.str();
}

}  // namespace sforge
