#ifndef CORPUSFORGE_ADAPTERS_HPP_
#define CORPUSFORGE_ADAPTERS_HPP_

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "corpusforge/committee.hpp"

namespace corpusforge {

// One committee member. Implementations must be safe to call from several
// threads at once.
class RecognizerAdapter {
 public:
  explicit RecognizerAdapter(RecognizerId id) : id_(std::move(id)) {}
  virtual ~RecognizerAdapter() = default;

  RecognizerAdapter(const RecognizerAdapter&) = delete;
  RecognizerAdapter& operator=(const RecognizerAdapter&) = delete;

  const RecognizerId& id() const { return id_; }

  // Raw (unnormalized) transcript. Throws AdapterError.
  virtual std::string transcribe(const ClipRef& clip) = 0;

 private:
  RecognizerId id_;
};

// Serves transcripts from a JSON-lines file of {"id", "transcript"} objects
// ("text" is accepted in place of "transcript"; {"id", "error"} marks a
// failed clip). This is how stored outputs of external systems join the
// committee.
class CachedManifestAdapter final : public RecognizerAdapter {
 public:
  CachedManifestAdapter(RecognizerId id, const std::filesystem::path& path);

  std::string transcribe(const ClipRef& clip) override;

  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    std::string transcript;
    std::string error;
  };
  std::map<std::string, Entry, std::less<>> entries_;
};

// Talks to a long-running child process: one {"id","audio_path"} JSON
// object per line on its stdin, one {"id","transcript"} or {"id","error"}
// per line on its stdout. Replies to earlier, timed-out requests are
// discarded. A child that exits is restarted on the next request.
class SubprocessAdapter final : public RecognizerAdapter {
 public:
  // The child runs in `working_dir` when one is given.
  SubprocessAdapter(RecognizerId id, std::vector<std::string> argv,
                    std::chrono::milliseconds timeout = std::chrono::seconds(60),
                    std::filesystem::path working_dir = {});
  ~SubprocessAdapter() override;

  std::string transcribe(const ClipRef& clip) override;

 private:
  void start();
  void stop();
  std::optional<std::string> read_line(std::chrono::steady_clock::time_point deadline);

  std::vector<std::string> argv_;
  std::chrono::milliseconds timeout_;
  std::filesystem::path working_dir_;
  std::mutex mutex_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

// POSTs the clip's WAV bytes to `url` and expects the same JSON reply shape
// as the subprocess protocol. The clip id travels in an X-Clip-Id header.
class HttpAdapter final : public RecognizerAdapter {
 public:
  HttpAdapter(RecognizerId id, std::string url,
              std::chrono::milliseconds timeout = std::chrono::seconds(60));

  std::string transcribe(const ClipRef& clip) override;

 private:
  std::string scheme_host_port_;
  std::string path_;
  std::chrono::milliseconds timeout_;
};

struct AdapterSpec {
  RecognizerId id;
  std::string type;  // "cached" | "subprocess" | "http"
  std::filesystem::path path;
  std::vector<std::string> command;
  std::filesystem::path working_dir;
  std::string url;
  std::chrono::milliseconds timeout{60000};
};

std::shared_ptr<RecognizerAdapter> make_adapter(const AdapterSpec& spec);

// Shared by the subprocess and HTTP adapters: extracts the transcript from
// a reply object, throwing AdapterError on {"error"} or a malformed reply.
std::string transcript_from_reply(const nlohmann::json& reply, const std::string& expected_id);

}  // namespace corpusforge

#endif  // CORPUSFORGE_ADAPTERS_HPP_
