#include "corpusforge/adapters.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <thread>

#include <httplib.h>

#include "corpusforge/error.hpp"
#include "corpusforge/io.hpp"
#include "corpusforge/logging.hpp"

namespace corpusforge {

// ---------------------------------------------------------------------------
// Reply parsing

std::string transcript_from_reply(const nlohmann::json& reply, const std::string& expected_id) {
  if (!reply.is_object()) throw AdapterError("reply is not a JSON object");
  if (reply.contains("id") && reply["id"].is_string() && reply["id"].get<std::string>() != expected_id) {
    throw AdapterError("reply id " + reply["id"].get<std::string>() + " does not match " + expected_id);
  }
  if (reply.contains("error")) {
    const auto& e = reply["error"];
    throw AdapterError(e.is_string() ? e.get<std::string>() : e.dump());
  }
  if (!reply.contains("transcript") || !reply["transcript"].is_string()) {
    throw AdapterError("reply has neither \"transcript\" nor \"error\"");
  }
  return reply["transcript"].get<std::string>();
}

// ---------------------------------------------------------------------------
// Cached manifest

CachedManifestAdapter::CachedManifestAdapter(RecognizerId id, const std::filesystem::path& path)
    : RecognizerAdapter(std::move(id)) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open cached transcripts " + path.string());
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!obj.is_object() || !obj.contains("id") || !obj["id"].is_string()) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": missing string \"id\"");
    }
    Entry entry;
    if (obj.contains("error")) {
      entry.error = obj["error"].is_string() ? obj["error"].get<std::string>() : obj["error"].dump();
    } else if (obj.contains("transcript") && obj["transcript"].is_string()) {
      entry.transcript = obj["transcript"].get<std::string>();
    } else if (obj.contains("text") && obj["text"].is_string()) {
      entry.transcript = obj["text"].get<std::string>();
    } else {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": needs \"transcript\", \"text\" or \"error\"");
    }
    entries_.insert_or_assign(obj["id"].get<std::string>(), std::move(entry));
  }
}

std::string CachedManifestAdapter::transcribe(const ClipRef& clip) {
  const auto it = entries_.find(clip.id);
  if (it == entries_.end()) throw AdapterError("no_entry");
  if (!it->second.error.empty()) throw AdapterError(it->second.error);
  return it->second.transcript;
}

// ---------------------------------------------------------------------------
// Subprocess

namespace {

void ignore_sigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

bool write_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

}  // namespace

SubprocessAdapter::SubprocessAdapter(RecognizerId id, std::vector<std::string> argv,
                                     std::chrono::milliseconds timeout,
                                     std::filesystem::path working_dir)
    : RecognizerAdapter(std::move(id)),
      argv_(std::move(argv)),
      timeout_(timeout),
      working_dir_(std::move(working_dir)) {
  if (argv_.empty()) throw ConfigError("adapters." + this->id().name + ".command", "empty command");
  ignore_sigpipe();
}

SubprocessAdapter::~SubprocessAdapter() {
  std::lock_guard lock(mutex_);
  stop();
}

void SubprocessAdapter::start() {
  int in_pipe[2];
  int out_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0) throw AdapterError("pipe failed");
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw AdapterError("pipe failed");
  }
  const std::string cwd = working_dir_.string();
  std::vector<char*> args;
  for (auto& a : argv_) args.push_back(a.data());
  args.push_back(nullptr);

  const pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) ::close(fd);
    throw AdapterError("fork failed");
  }
  if (pid == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::signal(SIGPIPE, SIG_DFL);
    if (!cwd.empty() && ::chdir(cwd.c_str()) != 0) ::_exit(126);
    ::execvp(args[0], args.data());
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  buffer_.clear();
  log_debug("started adapter " + id().name + " (pid " + std::to_string(pid) + ")");
}

void SubprocessAdapter::stop() {
  if (pid_ < 0) return;
  if (to_child_ >= 0) ::close(to_child_);
  to_child_ = -1;
  // Closing stdin lets a well-behaved child exit on its own.
  int status = 0;
  bool reaped = false;
  for (int i = 0; i < 50 && !reaped; ++i) {
    if (::waitpid(pid_, &status, WNOHANG) == pid_) {
      reaped = true;
    } else {
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
  }
  if (!reaped) {
    ::kill(pid_, SIGTERM);
    for (int i = 0; i < 100 && !reaped; ++i) {
      if (::waitpid(pid_, &status, WNOHANG) == pid_) {
        reaped = true;
      } else {
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
      }
    }
    if (!reaped) {
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, &status, 0);
    }
  }
  if (from_child_ >= 0) ::close(from_child_);
  from_child_ = -1;
  pid_ = -1;
  buffer_.clear();
}

std::optional<std::string> SubprocessAdapter::read_line(
    std::chrono::steady_clock::time_point deadline) {
  for (;;) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) throw AdapterError("timeout");
    pollfd pfd{from_child_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(left.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw AdapterError(std::string("poll failed: ") + std::strerror(errno));
    }
    if (ready == 0) throw AdapterError("timeout");
    char chunk[4096];
    const ssize_t n = ::read(from_child_, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw AdapterError(std::string("read failed: ") + std::strerror(errno));
    }
    if (n == 0) return std::nullopt;
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

std::string SubprocessAdapter::transcribe(const ClipRef& clip) {
  std::lock_guard lock(mutex_);
  if (pid_ < 0) start();
  const std::string request =
      nlohmann::json{{"id", clip.id}, {"audio_path", clip.audio_path}}.dump() + "\n";
  if (!write_all(to_child_, request)) {
    stop();
    throw AdapterError("adapter process is not accepting requests");
  }
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  for (;;) {
    const auto line = read_line(deadline);
    if (!line) {
      stop();
      throw AdapterError("adapter process exited");
    }
    nlohmann::json reply;
    try {
      reply = nlohmann::json::parse(*line);
    } catch (const nlohmann::json::parse_error&) {
      log_warn("adapter " + id().name + ": ignoring non-JSON output line");
      continue;
    }
    // Late replies to requests that already timed out.
    if (reply.is_object() && reply.contains("id") && reply["id"] != clip.id) continue;
    return transcript_from_reply(reply, clip.id);
  }
}

// ---------------------------------------------------------------------------
// HTTP

HttpAdapter::HttpAdapter(RecognizerId id, std::string url, std::chrono::milliseconds timeout)
    : RecognizerAdapter(std::move(id)), timeout_(timeout) {
  const std::string field = "adapters." + this->id().name + ".url";
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos || url.compare(0, scheme_end, "http") != 0) {
    throw ConfigError(field, "expected an http:// URL");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
}

std::string HttpAdapter::transcribe(const ClipRef& clip) {
  std::string body;
  try {
    body = read_file_text(clip.audio_path);
  } catch (const DataError& e) {
    throw AdapterError(e.what());
  }
  httplib::Client client(scheme_host_port_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  httplib::Headers headers = {{"X-Clip-Id", clip.id}};
  const auto res = client.Post(path_, headers, body, "audio/wav");
  if (!res) throw AdapterError("http request failed: " + httplib::to_string(res.error()));
  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error&) {
    throw AdapterError("http " + std::to_string(res->status) + ": reply is not JSON");
  }
  if (res->status != 200 && !reply.contains("error")) {
    throw AdapterError("http status " + std::to_string(res->status));
  }
  return transcript_from_reply(reply, clip.id);
}

// ---------------------------------------------------------------------------

std::shared_ptr<RecognizerAdapter> make_adapter(const AdapterSpec& spec) {
  if (spec.type == "cached") return std::make_shared<CachedManifestAdapter>(spec.id, spec.path);
  if (spec.type == "subprocess") {
    return std::make_shared<SubprocessAdapter>(spec.id, spec.command, spec.timeout,
                                               spec.working_dir);
  }
  if (spec.type == "http") return std::make_shared<HttpAdapter>(spec.id, spec.url, spec.timeout);
  throw ConfigError("adapters." + spec.id.name + ".type", "unknown adapter type \"" + spec.type + "\"");
}

}  // namespace corpusforge
