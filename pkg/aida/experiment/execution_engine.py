########################################################################
#
# File:   execution_engine.py
# Date:   2026-03-12
#
# Contents:
#   ExecutionEngine
#
# For license terms see the file COPYING.
#
########################################################################

########################################################################
# Imports
########################################################################

import queue
import sys
import threading

from aida.experiment.result import Result
from aida.trace import get_tracer

########################################################################
# Classes
########################################################################

class RunThread(threading.Thread):
    """A worker that executes runs taken from a shared queue.

    Each finished 'Result' is placed on the response queue.  A 'None'
    taken from the work queue stops the thread."""

    def __init__(self, work_queue, response_queue, tracer):

        super(RunThread, self).__init__()
        self.daemon = True
        self.__work_queue = work_queue
        self.__response_queue = response_queue
        self.__tracer = tracer


    def run(self):

        while True:
            descriptor = self.__work_queue.get()
            if descriptor is None:
                return
            try:
                result = descriptor.Run(self.__tracer)
            except:
                result = Result(descriptor.id,
                                parameters=descriptor.parameters)
                result.NoteException(sys.exc_info())
            self.__response_queue.put(result)



class ExecutionEngine:
    """An 'ExecutionEngine' executes the runs of a matrix.

    Runs are started in the order given, on up to 'concurrency' worker
    threads.  Each run is sequential; the engine only overlaps runs.
    Results are handed to every result stream on the calling thread as
    they arrive, so streams need no locking."""

    def __init__(self, descriptors, result_streams=None, concurrency=1,
                 tracer=None, annotations=None):
        """Set up a matrix run.

        'descriptors' -- A sequence of 'RunDescriptor's.

        'result_streams' -- A sequence of 'ResultStream's.

        'concurrency' -- The number of worker threads.  With one, runs
        execute on the calling thread.

        'annotations' -- A map written to every stream before the first
        result."""

        self.__descriptors = list(descriptors)
        self.__result_streams = list(result_streams or [])
        self.__concurrency = max(1, int(concurrency))
        self.__tracer = tracer or get_tracer()
        self.__annotations = dict(annotations or {})


    def Run(self):
        """Execute every run.

        returns -- The 'Result's, sorted by run id."""

        for stream in self.__result_streams:
            stream.WriteAllAnnotations(self.__annotations)
        results = []
        try:
            if self.__concurrency == 1:
                for descriptor in self.__descriptors:
                    self._Trace("Starting %s." % descriptor.id)
                    self.__AddResult(descriptor.Run(self.__tracer), results)
            else:
                self.__RunThreaded(results)
        except:
            for stream in self.__result_streams:
                stream.WriteAnnotation("aida.run.aborted", "true")
            raise
        finally:
            for stream in self.__result_streams:
                stream.Summarize()
        return sorted(results, key=lambda r: r.GetId())


    def __RunThreaded(self, results):

        work_queue = queue.Queue()
        response_queue = queue.Queue()
        threads = [RunThread(work_queue, response_queue, self.__tracer)
                   for i in range(self.__concurrency)]
        for thread in threads:
            thread.start()
        for descriptor in self.__descriptors:
            self._Trace("Queueing %s." % descriptor.id)
            work_queue.put(descriptor)
        for thread in threads:
            work_queue.put(None)
        try:
            for descriptor in self.__descriptors:
                self.__AddResult(response_queue.get(), results)
        finally:
            for thread in threads:
                thread.join()


    def __AddResult(self, result, results):

        self._Trace("Recording %s result for %s."
                    % (result.GetOutcome(), result.GetId()))
        results.append(result)
        for stream in self.__result_streams:
            stream.WriteResult(result)


    def _Trace(self, message):

        self.__tracer.Write(message, "engine")

########################################################################
# Local Variables:
# mode: python
# indent-tabs-mode: nil
# fill-column: 72
# End:
