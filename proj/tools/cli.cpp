#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "switchcap/capacity.hpp"
#include "switchcap/channel.hpp"
#include "switchcap/errors.hpp"
#include "switchcap/switch_oracle.hpp"

namespace switchcap::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";
constexpr const char* kCsvHeader = "m_orders,dim,chi_bits,s_min_bits,s_control_bits";

constexpr std::size_t kMinSweepDim = 2;
constexpr std::size_t kMaxSweepDim = 64;
constexpr std::size_t kMinSweepOrders = 1;
constexpr std::size_t kMaxSweepOrders = 1000000;

class ArgumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t parse_size(std::string_view s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) {
    throw std::invalid_argument("not a non-negative integer: '" + std::string(s) + "'");
  }
  return std::stoull(std::string(s));
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// Results in index order for any worker count.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, std::size_t jobs, const Fn& fn) {
  std::vector<T> results(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) results[i] = fn(i);
  };
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return results;
}

void require_in_range(const std::vector<std::size_t>& values, std::size_t lo, std::size_t hi,
                      const char* what) {
  if (values.empty()) throw ArgumentError(std::string(what) + ": empty list");
  for (auto v : values) {
    if (v < lo || v > hi) {
      throw ArgumentError(std::string(what) + ": " + std::to_string(v) + " outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  }
}

// Sorted by (dim, m_orders), duplicates removed.
std::vector<CapacityReport> capacity_grid(std::vector<std::size_t> dims,
                                          std::vector<std::size_t> orders, std::size_t jobs) {
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
  std::vector<std::pair<std::size_t, std::size_t>> keys;
  for (auto d : dims)
    for (auto m : orders) keys.emplace_back(m, d);
  return parallel_map<CapacityReport>(keys.size(), jobs,
                                      [&](std::size_t i) { return holevo(keys[i].first, keys[i].second); });
}

void write_csv(std::ostream& os, const std::vector<CapacityReport>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.m_orders << ',' << r.dim << ',' << fmt("%.12g", r.chi) << ',' << fmt("%.12g", r.s_min)
       << ',' << fmt("%.12g", r.s_control) << '\n';
  }
}

void write_json(std::ostream& os, const std::vector<CapacityReport>& rows, std::uint64_t seed) {
  json doc;
  doc["rows"] = json::array();
  for (const auto& r : rows) {
    doc["rows"].push_back({{"m_orders", r.m_orders},
                           {"dim", r.dim},
                           {"chi_bits", r.chi},
                           {"s_min_bits", r.s_min},
                           {"s_control_bits", r.s_control}});
  }
  doc["meta"] = {{"seed", seed}, {"version", kVersion}};
  os << doc.dump(2) << '\n';
}

void write_text_table(std::ostream& os, std::vector<CapacityReport> rows) {
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.m_orders, a.dim) < std::tie(b.m_orders, b.dim);
  });
  char line[160];
  std::snprintf(line, sizeof line, "%8s %4s %8s %12s %12s\n", "M", "d", "chi", "s_min", "s_control");
  os << line;
  for (const auto& r : rows) {
    // printf rounds the exact binary value, ties to even.
    std::snprintf(line, sizeof line, "%8zu %4zu %8.4f %12.6f %12.6f\n", r.m_orders, r.dim, r.chi,
                  r.s_min, r.s_control);
    os << line;
  }
}

// ---- verify ---------------------------------------------------------------

struct VerifyCase {
  std::size_t n_channels;
  std::size_t dim;
  std::string mode;
  OrderSet orders;
};

std::string describe(const OrderSet& orders) {
  std::string s;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (i) s += ';';
    for (std::size_t k = 0; k < orders[i].size(); ++k) {
      if (k) s += ',';
      s += std::to_string(orders[i][k]);
    }
  }
  return s;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

struct VerifySettings {
  double tol;
  double chi_tol;
  std::size_t samples;
  std::uint64_t seed;
  std::size_t jobs;
};

// Returns the report and whether the case failed.
std::pair<json, bool> run_verify_case(const VerifyCase& vc, const VerifySettings& s) {
  const auto start = std::chrono::steady_clock::now();
  const auto basis = weyl_basis(vc.dim);
  const std::size_t m = vc.orders.size();
  const auto c = ControlAmplitudes::uniform(m);
  std::mt19937_64 rng(s.seed);
  const auto rho = random_density_matrix(vc.dim, rng);

  const auto out = apply_switch(vc.orders, basis, c, rho, s.jobs);
  const auto predicted = analytic_output_state(c, rho);

  double related_residual = 0.0;
  double unrelated_residual = 0.0;
  json divergent = json::array();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double r = max_abs_diff(out.block(i, j), extract_block(predicted, i, j, vc.dim));
      if (i == j || cyclically_related(vc.orders[i], vc.orders[j])) {
        related_residual = std::max(related_residual, r);
      } else {
        unrelated_residual = std::max(unrelated_residual, r);
        if (i < j) {
          divergent.push_back({{"i", i},
                               {"j", j},
                               {"order_i", vc.orders[i]},
                               {"order_j", vc.orders[j]},
                               {"residual_vs_rho_over_d2", r},
                               {"cross_term", matrix_to_json(cross_term(vc.orders, basis, i, j, rho))}});
        }
      }
    }
  }

  const double kraus_residual = check_completeness(build_switch_kraus(vc.orders, basis));
  const auto oracle = holevo_oracle_report(vc.orders, basis, s.samples, s.seed, s.jobs);
  const double chi_analytic = holevo(m, vc.dim).chi;
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const bool cyclic = vc.orders.all_cyclically_related();
  json report{{"case", {{"n_channels", vc.n_channels}, {"dim", vc.dim}, {"mode", vc.mode},
                        {"orders", describe(vc.orders)}, {"m_orders", m}}},
              {"max_block_residual", related_residual},
              {"kraus_completeness_residual", kraus_residual},
              {"chi_analytic", chi_analytic},
              {"chi_oracle", oracle.chi},
              {"samples", oracle.samples},
              {"wall_time", elapsed}};
  bool failed = false;
  if (cyclic) {
    const bool passed = related_residual < s.tol && std::abs(chi_analytic - oracle.chi) < s.chi_tol &&
                        kraus_residual < s.tol;
    report["passed"] = passed;
    report["status"] = passed ? "pass" : "fail";
    failed = !passed;
  } else {
    // Only blocks between cyclically related orders are held to the
    // closed form; the rest are reported as measured.
    report["passed"] = nullptr;
    report["non_cyclic_block_residual"] = unrelated_residual;
    report["non_cyclic_blocks"] = divergent;
    if (related_residual >= s.tol || kraus_residual >= s.tol) {
      report["status"] = "fail";
      failed = true;
    } else {
      report["status"] = unrelated_residual >= s.tol ? "divergent-block" : "pass";
    }
  }
  return {report, failed};
}

}  // namespace

std::vector<std::size_t> parse_index_list(std::string_view text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const std::string item = trim(text.substr(pos, comma - pos));
    if (item.empty()) throw std::invalid_argument("empty item in list '" + std::string(text) + "'");
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_size(item));
    } else {
      const std::size_t lo = parse_size(trim(std::string_view(item).substr(0, dots)));
      const std::size_t hi = parse_size(trim(std::string_view(item).substr(dots + 2)));
      if (hi < lo) throw std::invalid_argument("descending range '" + item + "'");
      if (hi - lo > 10000000) throw std::invalid_argument("range too long '" + item + "'");
      for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    }
    pos = comma + 1;
  }
  return out;
}

std::vector<std::vector<std::size_t>> parse_order_list(std::string_view text) {
  std::vector<std::vector<std::size_t>> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto semi = std::min(text.find(';', pos), text.size());
    const std::string item = trim(text.substr(pos, semi - pos));
    if (item.empty()) throw std::invalid_argument("empty order in '" + std::string(text) + "'");
    std::vector<std::size_t> order;
    std::size_t p = 0;
    while (p <= item.size()) {
      const auto comma = std::min(item.find(',', p), item.size());
      order.push_back(parse_size(trim(std::string_view(item).substr(p, comma - p))));
      p = comma + 1;
    }
    out.push_back(std::move(order));
    pos = semi + 1;
  }
  return out;
}

std::vector<std::size_t> log_spaced(std::size_t lo, std::size_t hi, std::size_t points) {
  if (lo == 0 || hi < lo || points == 0) throw std::invalid_argument("log_spaced: bad range");
  std::vector<std::size_t> out;
  if (points == 1 || lo == hi) return {lo};
  const double a = std::log(static_cast<double>(lo));
  const double b = std::log(static_cast<double>(hi));
  for (std::size_t k = 0; k < points; ++k) {
    const double x = a + (b - a) * static_cast<double>(k) / static_cast<double>(points - 1);
    out.push_back(static_cast<std::size_t>(std::llround(std::exp(x))));
  }
  out.front() = lo;
  out.back() = hi;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Holevo capacity of depolarizing channels in a quantum switch", "switchcap"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string dims_text = "2,3";
  std::string orders_text = "2..6";
  std::string format = "text";
  std::string out_path = "-";
  std::size_t log_points = 0;
  std::size_t jobs = 1;
  std::uint64_t seed = 42;
  double tol = 1e-10;
  double chi_tol = 1e-6;
  std::size_t samples = 64;
  std::string n_channels_text = "2";
  std::string dim_text = "2";
  std::string order_mode = "cyclic";
  std::string explicit_orders;
  std::size_t limit_dim = 2;

  auto* table = app.add_subcommand("table", "Holevo quantity for a grid of (M, d)");
  table->add_option("--dims", dims_text, "Target dimensions, e.g. 2,3 or 2..6")->capture_default_str();
  table->add_option("--orders", orders_text, "Numbers of causal orders M")->capture_default_str();
  table->add_option("--format", format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Write a (M, d) grid as CSV or JSON");
  sweep->add_option("--dims", dims_text, "Target dimensions")->required();
  sweep->add_option("--orders", orders_text, "Numbers of causal orders M")->required();
  sweep->add_option("--log-points", log_points,
                    "Replace each a..b range in --orders with this many log-spaced points");
  sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", out_path, "Output file, '-' for stdout")->capture_default_str();
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_option("--seed", seed, "Recorded in JSON metadata")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Compare the brute-force switch with the closed forms");
  verify->add_option("--n-channels", n_channels_text, "Number of channels N (list allowed)")->capture_default_str();
  verify->add_option("--dim", dim_text, "Target dimension d (list allowed)")->capture_default_str();
  verify->add_option("--order-mode", order_mode, "cyclic, all or explicit")
      ->check(CLI::IsMember({"cyclic", "all", "explicit"}))
      ->capture_default_str();
  verify->add_option("--explicit", explicit_orders, "Orders for explicit mode, e.g. \"0,1,2;1,0,2\"");
  verify->add_option("--tol", tol, "Block residual tolerance")->capture_default_str();
  verify->add_option("--chi-tol", chi_tol, "Holevo agreement tolerance")->capture_default_str();
  verify->add_option("--samples", samples, "Pure-state samples for the oracle")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--seed", seed, "Seed for random states")->capture_default_str();
  verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  auto* limit = app.add_subcommand("limit", "Large-M saturation value of the Holevo quantity");
  limit->add_option("--dim", limit_dim, "Target dimension d")->capture_default_str();
  limit->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  }

  try {
    if (table->parsed()) {
      const auto dims = parse_index_list(dims_text);
      const auto orders = parse_index_list(orders_text);
      require_in_range(dims, kMinSweepDim, kMaxSweepDim, "--dims");
      require_in_range(orders, kMinSweepOrders, kMaxSweepOrders, "--orders");
      const auto rows = capacity_grid(dims, orders, 1);
      if (format == "csv") {
        write_csv(out, rows);
      } else if (format == "json") {
        write_json(out, rows, seed);
      } else {
        write_text_table(out, rows);
      }
      return kOk;
    }

    if (sweep->parsed()) {
      if (format == "text") format = "csv";
      const auto dims = parse_index_list(dims_text);
      std::vector<std::size_t> orders;
      if (log_points > 0) {
        // Ranges become log-spaced samples; plain values pass through.
        std::size_t pos = 0;
        while (pos <= orders_text.size()) {
          const auto comma = std::min(orders_text.find(',', pos), orders_text.size());
          const std::string item = trim(std::string_view(orders_text).substr(pos, comma - pos));
          const auto dots = item.find("..");
          if (dots == std::string::npos) {
            const auto single = parse_index_list(item);
            orders.insert(orders.end(), single.begin(), single.end());
          } else {
            const auto lo = parse_size(trim(std::string_view(item).substr(0, dots)));
            const auto hi = parse_size(trim(std::string_view(item).substr(dots + 2)));
            const auto pts = log_spaced(lo, hi, log_points);
            orders.insert(orders.end(), pts.begin(), pts.end());
          }
          pos = comma + 1;
        }
      } else {
        orders = parse_index_list(orders_text);
      }
      require_in_range(dims, kMinSweepDim, kMaxSweepDim, "--dims");
      require_in_range(orders, kMinSweepOrders, kMaxSweepOrders, "--orders");
      const auto rows = capacity_grid(dims, orders, jobs);

      auto emit = [&](std::ostream& os) {
        if (format == "json") {
          write_json(os, rows, seed);
        } else {
          write_csv(os, rows);
        }
      };
      if (out_path == "-" || out_path.empty()) {
        emit(out);
        return kOk;
      }
      std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
      if (!file) {
        err << "error: cannot open '" << out_path << "' for writing\n";
        return kIoError;
      }
      emit(file);
      file.flush();
      if (!file) {
        err << "error: failed writing '" << out_path << "'\n";
        return kIoError;
      }
      return kOk;
    }

    if (verify->parsed()) {
      const auto ns = parse_index_list(n_channels_text);
      const auto ds = parse_index_list(dim_text);
      require_in_range(ns, 2, 64, "--n-channels");
      require_in_range(ds, kMinChannelDim, kMaxChannelDim, "--dim");
      if (order_mode == "explicit" && explicit_orders.empty()) {
        throw ArgumentError("--order-mode explicit needs --explicit");
      }
      std::vector<VerifyCase> cases;
      for (auto n : ns) {
        for (auto d : ds) {
          if (order_mode == "cyclic") {
            cases.push_back({n, d, order_mode, cyclic_orders(n)});
          } else if (order_mode == "all") {
            cases.push_back({n, d, order_mode, all_orders(n)});
          } else {
            cases.push_back({n, d, order_mode, OrderSet(n, parse_order_list(explicit_orders))});
          }
          check_size_guard(cases.back().orders, d);
        }
      }
      const VerifySettings settings{tol, chi_tol, samples, seed, jobs};
      bool any_failed = false;
      for (const auto& vc : cases) {
        auto [report, failed] = run_verify_case(vc, settings);
        out << report.dump() << '\n';
        any_failed = any_failed || failed;
      }
      return any_failed ? kVerificationFailed : kOk;
    }

    if (limit->parsed()) {
      if (limit_dim < 2) throw ArgumentError("--dim must be >= 2");
      const double lim = asymptotic_limit(limit_dim);
      const std::size_t ms[] = {100, 10000, 1000000};
      if (format == "json") {
        json doc{{"dim", limit_dim}, {"limit_bits", lim}, {"convergence", json::array()}};
        for (auto m : ms) {
          const double chi = holevo(m, limit_dim).chi;
          doc["convergence"].push_back({{"m_orders", m}, {"chi_bits", chi}, {"gap_bits", lim - chi}});
        }
        out << doc.dump(2) << '\n';
      } else {
        out << "dim " << limit_dim << '\n';
        out << "limit_bits " << fmt("%.12g", lim) << '\n';
        char line[128];
        std::snprintf(line, sizeof line, "%10s %16s %16s\n", "M", "chi_bits", "gap_bits");
        out << line;
        for (auto m : ms) {
          const double chi = holevo(m, limit_dim).chi;
          std::snprintf(line, sizeof line, "%10zu %16.12f %16.3e\n", m, chi, lim - chi);
          out << line;
        }
      }
      return kOk;
    }
  } catch (const SizeGuard& e) {
    err << "error: " << e.what() << '\n';
    return kSizeGuard;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const InvalidOrderSet& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  }
  return kBadArguments;
}

}  // namespace switchcap::cli
