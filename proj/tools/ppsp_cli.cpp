// Command-line front end for the PPSP lab. Links only the C API.

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ppsp/ppsp.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

// Library failure carrying the status, surfaced as exit code 2 or 1.
struct LibError : std::runtime_error {
  explicit LibError(ppsp_status s)
      : std::runtime_error(std::string(ppsp_status_name(s)) + ": " + ppsp_last_error()), status(s) {}
  ppsp_status status;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(ppsp_status s) {
  if (s != PPSP_OK) throw LibError(s);
}

struct CString {
  char* p = nullptr;
  ~CString() { ppsp_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct Buffer {
  ppsp_buffer b{nullptr, 0};
  ~Buffer() { ppsp_buffer_free(&b); }
  std::vector<uint8_t> bytes() const { return std::vector<uint8_t>(b.data, b.data + b.size); }
};

struct OutcomeDeleter {
  void operator()(ppsp_outcome* o) const { ppsp_outcome_free(o); }
};
struct P0Deleter {
  void operator()(ppsp_p0* p) const { ppsp_p0_free(p); }
};
struct SweepDeleter {
  void operator()(ppsp_sweep* s) const { ppsp_sweep_free(s); }
};
using OutcomePtr = std::unique_ptr<ppsp_outcome, OutcomeDeleter>;
using P0Ptr = std::unique_ptr<ppsp_p0, P0Deleter>;
using SweepPtr = std::unique_ptr<ppsp_sweep, SweepDeleter>;

std::string hex(const std::vector<uint8_t>& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out += digits[b >> 4];
    out += digits[b & 15];
  }
  return out;
}

// Flags shared by every subcommand.
struct SharedFlags {
  uint64_t n = 256;
  unsigned q_bits = 32;
  uint32_t k1 = 512, k2 = 200, k3 = 128, k4 = 128;
  std::string variant = "tpds14";
  uint64_t seed = 1;
  uint64_t trials = 1000;
  uint32_t threads = 0;

  ppsp_params params() const {
    ppsp_params p;
    p.n = n;
    p.q = uint64_t{1} << q_bits;
    p.k1 = k1;
    p.k2 = k2;
    p.k3 = k3;
    p.k4 = k4;
    p.variant = variant == "spoc13" ? PPSP_SPOC13 : PPSP_TPDS14;
    return p;
  }

  ppsp_trial_config trial_config() const {
    ppsp_trial_config c;
    ppsp_trial_config_default(&c);
    c.params = params();
    c.trials = trials;
    c.seed = seed;
    c.threads = threads;
    return c;
  }
};

void add_shared(CLI::App* cmd, SharedFlags& f, uint64_t default_trials) {
  f.trials = default_trials;
  cmd->add_option("--n", f.n, "vector length")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--q-bits", f.q_bits, "elements lie in [0, 2^bits)")->check(CLI::Range(1u, 63u))->capture_default_str();
  cmd->add_option("--k1", f.k1, "bits of the prime p")->capture_default_str();
  cmd->add_option("--k2", f.k2, "bits of alpha")->capture_default_str();
  cmd->add_option("--k3", f.k3, "bits of the additive masks")->capture_default_str();
  cmd->add_option("--k4", f.k4, "bits of the multiplicative masks")->capture_default_str();
  cmd->add_option("--variant", f.variant, "protocol variant")
      ->check(CLI::IsMember({"spoc13", "tpds14"}))
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "master seed")->capture_default_str();
  cmd->add_option("--trials", f.trials, "Monte-Carlo trials")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--threads", f.threads, "worker threads (0: all cores)")->capture_default_str();
}

// ---- check-params ---------------------------------------------------------

int cmd_check_params(const SharedFlags& f) {
  const ppsp_params p = f.params();
  ppsp_constraint_report report;
  if (ppsp_status s = ppsp_validate(&p, &report); s != PPSP_OK) {
    std::cerr << "error: " << ppsp_last_error() << "\n";
    return kExitUsage;
  }
  CString text, kv;
  check(ppsp_params_report(&p, 0, &text.p));
  check(ppsp_params_report(&p, 1, &kv.p));
  std::cout << text.str() << kv.str();
  return report.all_satisfied ? kExitOk : kExitViolation;
}

// ---- run ------------------------------------------------------------------

struct Endpoint {
  std::string host;
  std::string port;
};

Endpoint parse_endpoint(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) throw CLI::ValidationError("address", "expected HOST:PORT, got '" + text + "'");
  return {text.substr(0, colon), text.substr(colon + 1)};
}

class Socket {
 public:
  explicit Socket(int fd = -1) : fd_(fd) {}
  Socket(Socket&& o) noexcept : fd_(o.fd_) { o.fd_ = -1; }
  Socket& operator=(Socket&& o) noexcept {
    std::swap(fd_, o.fd_);
    return *this;
  }
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  ~Socket() {
    if (fd_ >= 0) ::close(fd_);
  }
  int fd() const { return fd_; }

 private:
  int fd_;
};

addrinfo* resolve(const Endpoint& ep, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  if (int rc = ::getaddrinfo(ep.host.c_str(), ep.port.c_str(), &hints, &res); rc != 0) {
    throw IoError("cannot resolve " + ep.host + ":" + ep.port + ": " + gai_strerror(rc));
  }
  return res;
}

Socket listen_and_accept(const Endpoint& ep) {
  addrinfo* res = resolve(ep, true);
  Socket server(::socket(res->ai_family, res->ai_socktype, res->ai_protocol));
  int one = 1;
  ::setsockopt(server.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  const bool ok = server.fd() >= 0 && ::bind(server.fd(), res->ai_addr, res->ai_addrlen) == 0 &&
                  ::listen(server.fd(), 1) == 0;
  ::freeaddrinfo(res);
  if (!ok) throw IoError("cannot listen on " + ep.host + ":" + ep.port + ": " + std::strerror(errno));

  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(server.fd(), reinterpret_cast<sockaddr*>(&bound), &len);
  std::cerr << "listening on port " << ntohs(bound.sin_port) << std::endl;

  Socket conn(::accept(server.fd(), nullptr, nullptr));
  if (conn.fd() < 0) throw IoError(std::string("accept failed: ") + std::strerror(errno));
  return conn;
}

Socket connect_to(const Endpoint& ep) {
  addrinfo* res = resolve(ep, false);
  Socket s(::socket(res->ai_family, res->ai_socktype, res->ai_protocol));
  const bool ok = s.fd() >= 0 && ::connect(s.fd(), res->ai_addr, res->ai_addrlen) == 0;
  ::freeaddrinfo(res);
  if (!ok) throw IoError("cannot connect to " + ep.host + ":" + ep.port + ": " + std::strerror(errno));
  return s;
}

void send_all(const Socket& s, const std::vector<uint8_t>& bytes) {
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    const ssize_t n = ::send(s.fd(), bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (n <= 0) throw IoError(std::string("send failed: ") + std::strerror(errno));
    sent += static_cast<std::size_t>(n);
  }
}

// Reads one frame, using the frame's own length fields to know when to stop.
std::vector<uint8_t> recv_frame(const Socket& s, const char* what) {
  std::vector<uint8_t> buf;
  for (;;) {
    std::size_t needed = 0;
    check(ppsp_frame_bytes_needed(buf.data(), buf.size(), &needed));
    if (needed == buf.size()) return buf;
    const std::size_t at = buf.size();
    buf.resize(needed);
    const ssize_t n = ::recv(s.fd(), buf.data() + at, needed - at, 0);
    if (n < 0) throw IoError(std::string("recv failed: ") + std::strerror(errno));
    if (n == 0) {
      std::ostringstream os;
      os << "framing error: truncated " << what << " frame: stream ended at byte offset " << at << ", missing "
         << needed - at << " byte(s)";
      throw IoError(os.str());
    }
    buf.resize(at + static_cast<std::size_t>(n));
  }
}

struct RunFlags {
  std::string a_mode = "random";
  std::string b_mode = "random";
  std::string listen;
  std::string connect;
  std::string transcript;
};

void write_transcript(const std::string& path, const std::vector<uint8_t>& round1, const std::vector<uint8_t>& round2) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw IoError("cannot write transcript file " + path);
  out << "P0->P1: " << hex(round1) << "\n" << "P1->P0: " << hex(round2) << "\n";
}

int report_outcome(const ppsp_outcome* outcome, const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  CString result, e, oracle;
  result.p = ppsp_outcome_result(outcome);
  e.p = ppsp_outcome_e(outcome);
  check(ppsp_dot_oracle(a.data(), b.data(), a.size(), &oracle.p));
  const bool match = result.str() == oracle.str();
  std::cout << "result (a.b) = " << result.str() << "\n"
            << "E = " << e.str() << "\n"
            << "oracle = " << oracle.str() << "\n"
            << "result == oracle: " << (match ? "true" : "false") << "\n";
  return match ? kExitOk : kExitViolation;
}

int cmd_run(const SharedFlags& f, const RunFlags& r) {
  const ppsp_params p = f.params();
  ppsp_constraint_report report;
  check(ppsp_validate(&p, &report));
  if (!report.all_satisfied) std::cerr << "warning: parameters violate the correctness constraints\n";

  std::vector<uint64_t> a(p.n), b(p.n);
  check(ppsp_derive_inputs(&p, f.seed, r.a_mode == "zero", r.b_mode == "zero", a.data(), b.data()));

  if (!r.connect.empty()) {
    // P1: receive Round1, answer with Round2.
    Socket s = connect_to(parse_endpoint(r.connect));
    const auto round1 = recv_frame(s, "Round1");
    Buffer reply;
    check(ppsp_p1_round2(&p, b.data(), b.size(), f.seed, round1.data(), round1.size(), &reply.b));
    send_all(s, reply.bytes());
    write_transcript(r.transcript, round1, reply.bytes());
    std::cout << "P1: sent Round2 (" << reply.b.size << " bytes)\n";
    return kExitOk;
  }

  if (!r.listen.empty()) {
    // P0: send Round1, finalize on Round2. The oracle check re-derives b from
    // the shared seed, which only a lab setup allows.
    Socket s = listen_and_accept(parse_endpoint(r.listen));
    ppsp_p0* raw = nullptr;
    Buffer round1;
    check(ppsp_p0_round1(&p, a.data(), a.size(), f.seed, &raw, &round1.b));
    P0Ptr p0(raw);
    send_all(s, round1.bytes());
    const auto round2 = recv_frame(s, "Round2");
    ppsp_outcome* out = nullptr;
    check(ppsp_p0_finalize(p0.get(), round2.data(), round2.size(), &out));
    OutcomePtr outcome(out);
    write_transcript(r.transcript, round1.bytes(), round2);
    return report_outcome(outcome.get(), a, b);
  }

  ppsp_outcome* out = nullptr;
  check(ppsp_run_session(&p, a.data(), b.data(), a.size(), f.seed, &out));
  OutcomePtr outcome(out);
  if (!r.transcript.empty()) {
    Buffer r1, r2;
    check(ppsp_outcome_frames(outcome.get(), &r1.b, &r2.b));
    write_transcript(r.transcript, r1.bytes(), r2.bytes());
  }
  return report_outcome(outcome.get(), a, b);
}

// ---- attack ---------------------------------------------------------------

struct AttackFlags {
  std::string attack = "fixed-a0";
  std::string pair = "random";
  std::string a_mode = "random";
};

int cmd_attack(const SharedFlags& f, const AttackFlags& af) {
  ppsp_trial_config cfg = f.trial_config();
  cfg.pair_mode = af.pair == "neighbor" ? PPSP_PAIR_NEIGHBOR : PPSP_PAIR_RANDOM;
  cfg.a_mode = af.a_mode == "zero" ? PPSP_INPUT_ZERO : PPSP_INPUT_RANDOM;
  ppsp_attack kind = PPSP_ATTACK_FIXED_A0;
  if (af.attack == "original") kind = PPSP_ATTACK_ORIGINAL;
  else if (af.attack == "fixed-general") kind = PPSP_ATTACK_FIXED_GENERAL;
  else if (af.attack == "test-candidate") kind = PPSP_ATTACK_TEST_CANDIDATE;

  double accuracy = 0.0;
  check(ppsp_run_attack_trials(&cfg, kind, &accuracy));
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", accuracy);
  std::cout << "attack=" << af.attack << " pair=" << af.pair << " k4=" << cfg.params.k4 << " trials=" << cfg.trials
            << " accuracy=" << buf << "\n";

  ppsp_params tp = cfg.params;
  tp.variant = PPSP_TPDS14;
  CString kv;
  check(ppsp_params_report(&tp, 1, &kv.p));
  std::cout << kv.str();
  return kExitOk;
}

// ---- sweep ----------------------------------------------------------------

struct SweepFlags {
  std::string range = "128:400:8";
  std::string out;
};

int cmd_sweep(const SharedFlags& f, const SweepFlags& sf) {
  unsigned from = 0, to = 0, step = 0;
  char tail = 0;
  if (std::sscanf(sf.range.c_str(), "%u:%u:%u%c", &from, &to, &step, &tail) != 3 || step == 0 || from > to) {
    std::cerr << "error: --k4-range expects FROM:TO:STEP with FROM <= TO and STEP >= 1\n";
    return kExitUsage;
  }
  const ppsp_trial_config cfg = f.trial_config();
  ppsp_sweep* raw = nullptr;
  check(ppsp_sweep_run(&cfg, from, to, step, &raw));
  SweepPtr sweep(raw);
  CString csv, summary;
  check(ppsp_sweep_csv(sweep.get(), &csv.p));
  check(ppsp_sweep_summary(sweep.get(), &summary.p));

  if (sf.out.empty()) {
    std::cout << csv.str();
    std::cerr << summary.str() << "\n";
    return kExitOk;
  }
  std::ofstream out(sf.out, std::ios::binary);
  if (!out) throw IoError("cannot write " + sf.out);
  out << csv.str();
  out.close();
  if (!out) throw IoError("failed writing " + sf.out);
  std::cout << "wrote " << ppsp_sweep_row_count(sweep.get()) << " rows to " << sf.out << "\n" << summary.str() << "\n";
  return kExitOk;
}

// ---- ot-demo --------------------------------------------------------------

int cmd_ot_demo(const SharedFlags& f) {
  const ppsp_params p = f.params();
  ppsp_ot_report r;
  check(ppsp_ot_demo(&p, f.trials, f.seed, f.threads, &r));
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "runs=%llu ot_correctness=%.4f forbidden_bit_recovery=%.4f both_bits_recovery=%.4f ambiguous=%llu",
                static_cast<unsigned long long>(r.runs), r.ot_correctness, r.forbidden_bit_recovery,
                r.both_bits_recovery, static_cast<unsigned long long>(r.ambiguous));
  std::cout << buf << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lab for attacking the PPSP scalar-product protocol"};
  app.require_subcommand(1);

  SharedFlags check_flags, run_flags, attack_flags, sweep_flags, ot_flags;
  RunFlags run_opts;
  AttackFlags attack_opts;
  SweepFlags sweep_opts;

  auto* check_cmd = app.add_subcommand("check-params", "evaluate correctness constraints and attack thresholds");
  add_shared(check_cmd, check_flags, 1000);

  auto* run_cmd = app.add_subcommand("run", "run one protocol session");
  add_shared(run_cmd, run_flags, 1);
  run_cmd->add_option("--a", run_opts.a_mode, "P0 input")->check(CLI::IsMember({"random", "zero"}));
  run_cmd->add_option("--b", run_opts.b_mode, "P1 input")->check(CLI::IsMember({"random", "zero"}));
  auto* listen_opt = run_cmd->add_option("--listen", run_opts.listen, "act as P0, listen on HOST:PORT");
  run_cmd->add_option("--connect", run_opts.connect, "act as P1, connect to HOST:PORT")->excludes(listen_opt);
  run_cmd->add_option("--transcript", run_opts.transcript, "write hex transcript to FILE");

  auto* attack_cmd = app.add_subcommand("attack", "measure attack accuracy");
  add_shared(attack_cmd, attack_flags, 1000);
  attack_cmd->add_option("--attack", attack_opts.attack, "attack to run")
      ->check(CLI::IsMember({"original", "fixed-a0", "fixed-general", "test-candidate"}))
      ->capture_default_str();
  attack_cmd->add_option("--pair", attack_opts.pair, "candidate pair construction")
      ->check(CLI::IsMember({"random", "neighbor"}))
      ->capture_default_str();
  attack_cmd->add_option("--a", attack_opts.a_mode, "P0 input for original/test-candidate")
      ->check(CLI::IsMember({"random", "zero"}));

  auto* sweep_cmd = app.add_subcommand("sweep", "sweep k4 and write CSV");
  add_shared(sweep_cmd, sweep_flags, 1000);
  sweep_cmd->add_option("--k4-range", sweep_opts.range, "FROM:TO:STEP")->capture_default_str();
  sweep_cmd->add_option("--out", sweep_opts.out, "CSV output file (default: stdout)");

  auto* ot_cmd = app.add_subcommand("ot-demo", "OT from PPSP and its break");
  add_shared(ot_cmd, ot_flags, 100);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*check_cmd) return cmd_check_params(check_flags);
    if (*run_cmd) return cmd_run(run_flags, run_opts);
    if (*attack_cmd) return cmd_attack(attack_flags, attack_opts);
    if (*sweep_cmd) return cmd_sweep(sweep_flags, sweep_opts);
    if (*ot_cmd) return cmd_ot_demo(ot_flags);
  } catch (const LibError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.status == PPSP_ERR_INVALID_PARAMS || e.status == PPSP_ERR_INVALID_ARGUMENT ? kExitUsage
                                                                                          : kExitViolation;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}
