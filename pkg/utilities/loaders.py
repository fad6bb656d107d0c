import torch
from torch.utils.data import DataLoader

# _as_list
def _as_list(batch):
    return list(batch)

class BatchLoader:
    """
    ----------
    - Simple class that allows you to get one batch at a time using a DataLoader
    - Batches are plain lists of dataset items (DecisionInputs have ragged shapes)
    - If a call to next_batch finishes an epoch, sets just_finished_epoch to True, otherwise sets it to False
    - generator seeds the shuffle order so epochs replay identically
    ----------
    """

    def __init__(self, dataset, batch_size, shuffle=False, drop_last=False, generator=None):
        self.loader = DataLoader(
            dataset, batch_size=batch_size, shuffle=shuffle, drop_last=drop_last,
            num_workers=0, collate_fn=_as_list, generator=generator,
        )
        self.loader_iter = iter(self.loader)

        self.just_finished_epoch = False

    def __len__(self):
        return len(self.loader)

    def next_batch(self):
        """
        ----------
        - Grabs the next batch from the dataset
        - If a call finishes an epoch, sets just_finished_epoch to True, otherwise sets it to False
        ----------
        """

        try:
            self.just_finished_epoch = False
            batch = next(self.loader_iter)
        except StopIteration:
            self.just_finished_epoch = True
            self.loader_iter = iter(self.loader)
            batch = next(self.loader_iter)

        return batch
