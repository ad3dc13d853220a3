#pragma once

#include <sys/types.h>

#include <chrono>
#include <string>

namespace lexqa::detail {

// A child process spoken to one line at a time over its stdin/stdout.
// Started lazily; restarted after a timeout or crash.
class LineProcess {
 public:
  explicit LineProcess(std::string command) : command_(std::move(command)) {}
  ~LineProcess();
  LineProcess(const LineProcess&) = delete;
  LineProcess& operator=(const LineProcess&) = delete;

  // Sends `line` (newline appended) and returns the next output line.
  // Throws TransportError on timeout, EOF or spawn failure.
  std::string request(const std::string& line, std::chrono::milliseconds timeout);

 private:
  void start();
  void stop();

  std::string command_;
  pid_t pid_ = -1;
  int in_fd_ = -1;   // child's stdin
  int out_fd_ = -1;  // child's stdout
  std::string buffer_;
};

// Runs `command` to completion with `input` on stdin; returns stdout.
// Throws TransportError on spawn failure, timeout or non-zero exit.
std::string run_capture(const std::string& command, const std::string& input,
                        std::chrono::milliseconds timeout);

}  // namespace lexqa::detail
