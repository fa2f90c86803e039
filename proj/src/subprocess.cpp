#include "datamap/subprocess.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <thread>

#include "datamap/errors.hpp"

namespace datamap {

CommandResult run_command(const std::string& shell_command, double timeout_secs) {
    int err_pipe[2];
    if (::pipe(err_pipe) != 0) {
        throw Error("pipe() failed: " + std::string(std::strerror(errno)));
    }

    pid_t pid = ::fork();
    if (pid < 0) {
        ::close(err_pipe[0]);
        ::close(err_pipe[1]);
        throw Error("fork() failed: " + std::string(std::strerror(errno)));
    }

    if (pid == 0) {
        // Child: own process group so a timeout can kill the whole tree.
        ::setpgid(0, 0);
        ::close(err_pipe[0]);
        int devnull = ::open("/dev/null", O_RDWR);
        if (devnull >= 0) {
            ::dup2(devnull, STDIN_FILENO);
            ::dup2(devnull, STDOUT_FILENO);
        }
        ::dup2(err_pipe[1], STDERR_FILENO);
        ::close(err_pipe[1]);
        ::execl("/bin/sh", "sh", "-c", shell_command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }

    ::close(err_pipe[1]);
    // Non-blocking read keeps the wait loop from stalling on a quiet child.
    int flags = ::fcntl(err_pipe[0], F_GETFL, 0);
    ::fcntl(err_pipe[0], F_SETFL, flags | O_NONBLOCK);

    CommandResult result;
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(timeout_secs));

    char buf[4096];
    bool exited = false;
    int status = 0;
    while (true) {
        ssize_t n;
        while ((n = ::read(err_pipe[0], buf, sizeof(buf))) > 0) {
            result.stderr_output.append(buf, static_cast<std::size_t>(n));
        }
        pid_t r = ::waitpid(pid, &status, WNOHANG);
        if (r == pid) {
            exited = true;
            break;
        }
        if (std::chrono::steady_clock::now() >= deadline) {
            break;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }

    if (!exited) {
        result.timed_out = true;
        ::kill(-pid, SIGKILL);
        ::kill(pid, SIGKILL);
        ::waitpid(pid, &status, 0);
    }

    // Drain whatever stderr is left after exit.
    ssize_t n;
    while ((n = ::read(err_pipe[0], buf, sizeof(buf))) > 0) {
        result.stderr_output.append(buf, static_cast<std::size_t>(n));
    }
    ::close(err_pipe[0]);

    if (result.timed_out) {
        result.exit_code = -1;
    } else if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
        result.exit_code = 128 + WTERMSIG(status);
    }
    return result;
}

std::string shell_quote(const std::string& arg) {
    std::string out = "'";
    for (char c : arg) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out.push_back(c);
        }
    }
    out.push_back('\'');
    return out;
}

}  // namespace datamap
